#include "cmdp/certificate.hpp"

#include "cmdp/chain.hpp"
#include "cmdp/simplex.hpp"

#include <algorithm>

namespace cmdp {

std::string_view to_string(Condition c) {
    switch (c) {
    case Condition::a1: return "A1";
    case Condition::a2: return "A2";
    case Condition::a3: return "A3";
    case Condition::a4: return "A4";
    case Condition::a5: return "A5";
    }
    return "?";
}

std::string_view to_string(UnsatReason r) {
    switch (r) {
    case UnsatReason::constraint_violated: return "constraint_violated";
    case UnsatReason::gain_conflict: return "gain_conflict";
    case UnsatReason::bellman_infeasible: return "bellman_infeasible";
    }
    return "?";
}

namespace {

const Rational& potential_at(const Certificate& cert, const Mdp& mdp, StateIndex s) {
    if (s >= cert.potential.size() || !cert.potential[s])
        throw CertificateError("certificate potential missing at state '" + mdp.state(s).id + "'");
    return *cert.potential[s];
}

Rational lagrangian_value(const Mdp& mdp, const Certificate& cert, StateIndex s, ActionIndex a) {
    const auto& act = mdp.action(s, a);
    Rational q = act.reward + dot(cert.mu, act.constraint);
    for (const auto& tr : act.transitions)
        if (!tr.probability.is_zero())
            q += tr.probability * potential_at(cert, mdp, tr.target);
    return q;
}

} // namespace

CertificateReport check_certificate(const Mdp& mdp, StateIndex x, const Policy& policy,
                                    const Certificate& cert) {
    policy.check(mdp);
    if (cert.mu.size() != mdp.constraint_dim())
        throw CertificateError("certificate mu has length " + std::to_string(cert.mu.size()) +
                               ", model constraint_dim is " + std::to_string(mdp.constraint_dim()));

    CertificateReport rep;
    rep.constraint = PolicyEvaluation(mdp, policy).constraint(x);
    rep.a1 = nonnegative(rep.constraint);
    rep.a2 = nonnegative(cert.mu);
    rep.a3 = dot(cert.mu, rep.constraint).is_zero();

    rep.reachable = reachable_states(mdp, policy, x);
    rep.a4 = true;
    rep.a5 = true;
    for (StateIndex s : rep.reachable) {
        const Rational lhs = cert.gain + potential_at(cert, mdp, s);
        std::optional<Rational> best;
        Rational chosen;
        for (ActionIndex a = 0; a < mdp.state(s).actions.size(); ++a) {
            const Rational q = lagrangian_value(mdp, cert, s, a);
            if (!best || q > *best)
                best = q;
            if (a == policy[s])
                chosen = q;
            rep.residuals.push_back({s, a, lhs - q});
        }
        rep.a4 = rep.a4 && lhs == *best;
        rep.a5 = rep.a5 && chosen == *best;
    }

    rep.dominates_on_closure = true;
    for (StateIndex s : reachable_states_all(mdp, x)) {
        if (s >= cert.potential.size() || !cert.potential[s]) {
            rep.dominates_on_closure = false;
            break;
        }
        for (ActionIndex a = 0; a < mdp.state(s).actions.size() && rep.dominates_on_closure; ++a) {
            const auto& act = mdp.action(s, a);
            bool defined = true;
            for (const auto& tr : act.transitions)
                defined = defined && tr.target < cert.potential.size() && cert.potential[tr.target];
            rep.dominates_on_closure = defined && cert.gain + *cert.potential[s] >= lagrangian_value(mdp, cert, s, a);
        }
        if (!rep.dominates_on_closure)
            break;
    }

    const std::pair<bool, Condition> order[] = {
        {rep.a1, Condition::a1}, {rep.a2, Condition::a2}, {rep.a3, Condition::a3},
        {rep.a4, Condition::a4}, {rep.a5, Condition::a5}};
    for (const auto& [ok, cond] : order)
        if (!ok) {
            rep.first_failure = cond;
            break;
        }
    return rep;
}

CertificateSearch find_certificate(const Mdp& mdp, StateIndex x, const Policy& policy,
                                   const CertificateOptions& options) {
    const PolicyEvaluation eval(mdp, policy);
    const std::size_t n = mdp.constraint_dim();

    CertificateSearch out;
    out.constraint = eval.constraint(x);
    if (!nonnegative(out.constraint)) {
        out.reason = UnsatReason::constraint_violated;
        return out;
    }

    // Complementary slackness: components with W_i(x) > 0 carry mu_i = 0.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
        if (out.constraint[i].is_zero())
            active.push_back(i);

    // Stage 1. Weighting the equality rows of a reachable class by its
    // stationary distribution gives g = rho_C + mu^T kappa_C; those
    // equations alone already decide most refutations.
    const auto& dec = eval.decomposition();
    std::vector<std::size_t> reached;
    for (std::size_t k = 0; k < dec.classes.size(); ++k)
        if (eval.absorption()(x, k).sign() > 0)
            reached.push_back(k);
    {
        FeasibilityProgram gains;
        const auto g = gains.add_variable(false);
        std::vector<std::size_t> mu_var;
        for (std::size_t i = 0; i < active.size(); ++i)
            mu_var.push_back(gains.add_variable(true));
        for (auto k : reached) {
            LinearConstraint row;
            row.terms.emplace_back(g, Rational(1));
            for (std::size_t i = 0; i < active.size(); ++i)
                row.terms.emplace_back(mu_var[i], -eval.class_gains()[k].constraint[active[i]]);
            row.rhs = eval.class_gains()[k].reward;
            gains.add_constraint(std::move(row));
        }
        const auto res = find_feasible_point(gains);
        if (!res.feasible) {
            out.reason = UnsatReason::gain_conflict;
            for (std::size_t r = 0; r < reached.size(); ++r)
                if (!res.farkas[r].is_zero()) {
                    const auto k = reached[r];
                    out.classes.push_back({k, dec.classes[k], eval.class_gains()[k].reward,
                                           eval.class_gains()[k].constraint, res.farkas[r]});
                }
            return out;
        }
    }

    // Stage 2: the full Bellman system. Inequalities hold on the whole
    // all-actions closure, equalities at pi-reachable states for pi's action.
    const StateSet closure = reachable_states_all(mdp, x);
    if (closure.size() > options.closure_cap)
        throw CertificateError("reachable closure has " + std::to_string(closure.size()) +
                               " states, cap is " + std::to_string(options.closure_cap));
    const StateSet reach = reachable_states(mdp, policy, x);
    std::vector<bool> on_path(mdp.size(), false);
    for (auto s : reach)
        on_path[s] = true;

    FeasibilityProgram lp;
    const auto g = lp.add_variable(false);
    std::vector<std::optional<std::size_t>> l_var(mdp.size());
    for (auto s : closure)
        l_var[s] = lp.add_variable(false);
    std::vector<std::size_t> mu_var;
    for (std::size_t i = 0; i < active.size(); ++i)
        mu_var.push_back(lp.add_variable(true));

    std::vector<std::pair<StateIndex, ActionIndex>> row_origin;
    for (auto s : closure)
        for (ActionIndex a = 0; a < mdp.state(s).actions.size(); ++a) {
            const auto& act = mdp.action(s, a);
            LinearConstraint row;
            row.terms.emplace_back(g, Rational(1));
            row.terms.emplace_back(*l_var[s], Rational(1));
            for (const auto& tr : act.transitions)
                if (!tr.probability.is_zero())
                    row.terms.emplace_back(*l_var[tr.target], -tr.probability);
            for (std::size_t i = 0; i < active.size(); ++i)
                row.terms.emplace_back(mu_var[i], -act.constraint[active[i]]);
            row.sense = (on_path[s] && a == policy[s]) ? Sense::equal : Sense::greater_equal;
            row.rhs = act.reward;
            lp.add_constraint(std::move(row));
            row_origin.emplace_back(s, a);
        }
    lp.add_constraint({{{*l_var[x], Rational(1)}}, Sense::equal, Rational(0)});

    const auto res = find_feasible_point(lp);
    if (!res.feasible) {
        out.reason = UnsatReason::bellman_infeasible;
        for (std::size_t r = 0; r < row_origin.size(); ++r)
            if (!res.farkas[r].is_zero())
                out.rows.push_back({row_origin[r].first, row_origin[r].second,
                                    lp.constraints()[r].sense == Sense::equal, res.farkas[r]});
        return out;
    }

    Certificate cert;
    cert.gain = res.point[g];
    cert.mu.assign(n, Rational());
    for (std::size_t i = 0; i < active.size(); ++i)
        cert.mu[active[i]] = res.point[mu_var[i]];
    cert.potential.assign(mdp.size(), Rational());
    for (auto s : closure)
        cert.potential[s] = res.point[*l_var[s]];

    if (!check_certificate(mdp, x, policy, cert).pass())
        throw std::logic_error("find_certificate: solution fails check_certificate");
    out.certificate = std::move(cert);
    return out;
}

} // namespace cmdp
