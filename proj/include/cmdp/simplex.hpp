#pragma once

#include "cmdp/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cmdp {

enum class Sense { equal, greater_equal, less_equal };

struct LinearConstraint {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Sense sense = Sense::equal;
    Rational rhs;
};

/// Linear feasibility problem over free and nonnegative variables.
class FeasibilityProgram {
public:
    std::size_t add_variable(bool nonnegative);
    std::size_t add_constraint(LinearConstraint row);

    std::size_t variables() const { return nonnegative_.size(); }
    const std::vector<bool>& nonnegative() const { return nonnegative_; }
    const std::vector<LinearConstraint>& constraints() const { return rows_; }

    /// Exact check that `point` satisfies every row and sign restriction.
    bool satisfied_by(const RationalVector& point) const;

    /// Exact check of an infeasibility proof: multipliers y with the sign of
    /// each row's sense (>= rows: y >= 0, <= rows: y <= 0), whose combination
    /// vanishes on free variables, is <= 0 on nonnegative ones, and has
    /// y^T b > 0.
    bool refuted_by(const RationalVector& farkas) const;

private:
    std::vector<bool> nonnegative_;
    std::vector<LinearConstraint> rows_;
};

struct FeasibilityResult {
    bool feasible = false;
    RationalVector point;   ///< when feasible
    RationalVector farkas;  ///< when infeasible, one multiplier per row
    std::size_t pivots = 0;
};

/// Phase-1 primal simplex on a dense rational tableau with Bland's rule.
/// Either result is verified exactly before returning.
FeasibilityResult find_feasible_point(const FeasibilityProgram& program);

} // namespace cmdp
