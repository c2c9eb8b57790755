#include "cmdp/simplex.hpp"

#include "cmdp/linalg.hpp"

#include <optional>
#include <stdexcept>

namespace cmdp {

std::size_t FeasibilityProgram::add_variable(bool nonnegative) {
    nonnegative_.push_back(nonnegative);
    return nonnegative_.size() - 1;
}

std::size_t FeasibilityProgram::add_constraint(LinearConstraint row) {
    for (const auto& [var, coef] : row.terms)
        if (var >= variables())
            throw std::out_of_range("add_constraint: unknown variable");
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

bool FeasibilityProgram::satisfied_by(const RationalVector& point) const {
    if (point.size() != variables())
        return false;
    for (std::size_t j = 0; j < variables(); ++j)
        if (nonnegative_[j] && point[j].sign() < 0)
            return false;
    for (const auto& row : rows_) {
        Rational lhs;
        for (const auto& [var, coef] : row.terms)
            lhs += coef * point[var];
        const auto c = lhs <=> row.rhs;
        if ((row.sense == Sense::equal && c != 0) || (row.sense == Sense::greater_equal && c < 0) ||
            (row.sense == Sense::less_equal && c > 0))
            return false;
    }
    return true;
}

bool FeasibilityProgram::refuted_by(const RationalVector& y) const {
    if (y.size() != rows_.size())
        return false;
    RationalVector combo(variables());
    Rational bound;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& row = rows_[i];
        if ((row.sense == Sense::greater_equal && y[i].sign() < 0) ||
            (row.sense == Sense::less_equal && y[i].sign() > 0))
            return false;
        if (y[i].is_zero())
            continue;
        for (const auto& [var, coef] : row.terms)
            combo[var] += y[i] * coef;
        bound += y[i] * row.rhs;
    }
    for (std::size_t j = 0; j < variables(); ++j) {
        if (nonnegative_[j] ? combo[j].sign() > 0 : !combo[j].is_zero())
            return false;
    }
    return bound.sign() > 0;
}

namespace {

// Standard-form column layout: structural columns (free variables split into
// a positive and a negative part), then one slack per inequality, then one
// artificial per row.
struct Layout {
    std::vector<std::size_t> positive, negative_part;  // per variable; npos if unused
    std::vector<std::size_t> slack;                    // per row; npos if equality
    std::size_t first_artificial = 0;
    std::size_t columns = 0;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

} // namespace

FeasibilityResult find_feasible_point(const FeasibilityProgram& program) {
    const auto& rows = program.constraints();
    const std::size_t m = rows.size();
    const std::size_t nvars = program.variables();

    Layout lay;
    lay.positive.resize(nvars);
    lay.negative_part.assign(nvars, npos);
    for (std::size_t j = 0; j < nvars; ++j) {
        lay.positive[j] = lay.columns++;
        if (!program.nonnegative()[j])
            lay.negative_part[j] = lay.columns++;
    }
    lay.slack.assign(m, npos);
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].sense != Sense::equal)
            lay.slack[i] = lay.columns++;
    lay.first_artificial = lay.columns;
    lay.columns += m;

    // Tableau rows 0..m-1 are constraints, row m holds phase-1 reduced costs;
    // the last column is the right-hand side.
    const std::size_t rhs = lay.columns;
    RationalMatrix t(m + 1, lay.columns + 1);
    std::vector<int> sigma(m, 1);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = rows[i];
        sigma[i] = row.rhs.sign() < 0 ? -1 : 1;
        const Rational s(sigma[i]);
        for (const auto& [var, coef] : row.terms) {
            t(i, lay.positive[var]) += s * coef;
            if (lay.negative_part[var] != npos)
                t(i, lay.negative_part[var]) -= s * coef;
        }
        if (row.sense == Sense::greater_equal)
            t(i, lay.slack[i]) = -s;
        else if (row.sense == Sense::less_equal)
            t(i, lay.slack[i]) = s;
        t(i, lay.first_artificial + i) = 1;
        t(i, rhs) = s * row.rhs;
        basis[i] = lay.first_artificial + i;
    }
    for (std::size_t j = 0; j <= lay.columns; ++j) {
        if (j >= lay.first_artificial && j < rhs)
            continue;
        Rational sum;
        for (std::size_t i = 0; i < m; ++i)
            sum += t(i, j);
        t(m, j) = -sum;
    }

    FeasibilityResult result;
    while (true) {
        std::optional<std::size_t> entering;
        for (std::size_t j = 0; j < lay.columns; ++j)
            if (t(m, j).sign() < 0) {
                entering = j;
                break;
            }
        if (!entering)
            break;
        const std::size_t e = *entering;

        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, e).sign() <= 0)
                continue;
            const Rational ratio = t(i, rhs) / t(i, e);
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave)
            throw std::logic_error("phase-1 simplex: unbounded direction");
        const std::size_t r = *leave;

        const Rational inv = Rational(1) / t(r, e);
        for (std::size_t j = 0; j <= lay.columns; ++j)
            if (!t(r, j).is_zero())
                t(r, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r || t(i, e).is_zero())
                continue;
            const Rational factor = t(i, e);
            for (std::size_t j = 0; j <= lay.columns; ++j)
                if (!t(r, j).is_zero())
                    t(i, j) -= factor * t(r, j);
        }
        basis[r] = e;
        ++result.pivots;
    }

    // The objective cell holds minus the sum of artificials.
    if (t(m, rhs).is_zero()) {
        RationalVector column(lay.columns);
        for (std::size_t i = 0; i < m; ++i)
            column[basis[i]] = t(i, rhs);
        result.feasible = true;
        result.point.resize(nvars);
        for (std::size_t j = 0; j < nvars; ++j) {
            result.point[j] = column[lay.positive[j]];
            if (lay.negative_part[j] != npos)
                result.point[j] -= column[lay.negative_part[j]];
        }
        if (!program.satisfied_by(result.point))
            throw std::logic_error("phase-1 simplex: returned point fails verification");
    } else {
        result.farkas.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            result.farkas[i] = Rational(sigma[i]) * (Rational(1) - t(m, lay.first_artificial + i));
        if (!program.refuted_by(result.farkas))
            throw std::logic_error("phase-1 simplex: Farkas multipliers fail verification");
    }
    return result;
}

} // namespace cmdp
