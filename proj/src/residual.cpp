#include "cmdp/residual.hpp"

#include "cmdp/chain.hpp"

#include <algorithm>
#include <deque>

namespace cmdp {

std::string_view to_string(Consistency c) {
    switch (c) {
    case Consistency::consistent: return "consistent";
    case Consistency::inconsistent: return "inconsistent";
    case Consistency::unmodified_infeasible: return "unmodified_infeasible";
    }
    return "?";
}

std::string_view to_string(ValueIdentity v) {
    switch (v) {
    case ValueIdentity::verified: return "verified";
    case ValueIdentity::failed: return "failed";
    case ValueIdentity::not_applicable: return "not_applicable";
    }
    return "?";
}

std::optional<std::size_t> first_visit_time(const Mdp& mdp, const Policy& policy, StateIndex x, StateIndex y) {
    policy.check(mdp);
    std::vector<std::optional<std::size_t>> dist(mdp.size());
    std::deque<StateIndex> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        if (v == y)
            return dist[v];
        for (const auto& tr : mdp.action(v, policy[v]).transitions)
            if (tr.probability.sign() > 0 && !dist[tr.target]) {
                dist[tr.target] = *dist[v] + 1;
                queue.push_back(tr.target);
            }
    }
    return std::nullopt;
}

namespace {

ResidualVisit slack_from(const PolicyEvaluation& eval, const RationalVector& dist, StateIndex x, StateIndex y,
                        std::size_t t, std::size_t dim) {
    ResidualVisit visit{x, y, t, dist.at(y), RationalVector(dim)};
    for (StateIndex s = 0; s < dist.size(); ++s) {
        if (s == y || dist[s].is_zero())
            continue;
        for (std::size_t j = 0; j < dim; ++j)
            visit.slack[j] -= dist[s] * eval.constraint(s)[j];
    }
    for (auto& v : visit.slack)
        v /= visit.prob_to;
    return visit;
}

} // namespace

ResidualVisit residual_slack(const Mdp& mdp, const Policy& policy, StateIndex x, StateIndex y,
                            std::optional<std::size_t> t) {
    if (!t) {
        t = first_visit_time(mdp, policy, x, y);
        if (!t)
            throw ResidualError("state '" + mdp.state(y).id + "' is not reachable from '" + mdp.state(x).id +
                                "' under the policy");
    }
    const PolicyEvaluation eval(mdp, policy);
    const auto dist = state_distribution_at(eval.chain(), x, *t);
    if (dist.at(y).is_zero())
        throw ResidualError("state '" + mdp.state(y).id + "' has probability zero at time " + std::to_string(*t));
    return slack_from(eval, dist, x, y, *t, mdp.constraint_dim());
}

Mdp build_residual_problem(const Mdp& mdp, const ResidualVisit& visit) {
    std::vector<std::vector<RationalVector>> shifted(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s)
        for (const auto& act : mdp.state(s).actions) {
            auto c = act.constraint;
            for (std::size_t j = 0; j < c.size(); ++j)
                c[j] -= visit.slack.at(j);
            shifted[s].push_back(std::move(c));
        }
    return mdp.with_constraints(mdp.constraint_dim(), shifted).with_initial_state(visit.to);
}

RationalVector constraint_bound(const Mdp& mdp) {
    std::vector<std::optional<Rational>> best(mdp.constraint_dim());
    for (const auto& st : mdp.states())
        for (const auto& act : st.actions)
            for (std::size_t j = 0; j < best.size(); ++j)
                if (!best[j] || act.constraint[j] > *best[j])
                    best[j] = act.constraint[j];
    RationalVector out;
    for (auto& b : best)
        out.push_back(b.value_or(Rational()));
    return out;
}

bool ConsistencyAuditReport::consistent() const {
    return original.optimal() && std::none_of(entries.begin(), entries.end(), [](const AuditEntry& e) {
               return e.consistency == Consistency::inconsistent;
           });
}

ConsistencyAuditReport audit_time_consistency(const Mdp& mdp, StateIndex x, const AuditOptions& options) {
    ConsistencyAuditReport report;
    report.from = x;
    report.original = solve(mdp, x, options.solve);
    if (!report.original.optimal())
        return report;
    const Policy& star = *report.original.policy;
    report.search = find_certificate(mdp, x, star, options.certificate);

    const PolicyEvaluation eval(mdp, star);
    const std::size_t horizon = std::max<std::size_t>(1, mdp.size());
    std::vector<bool> seen(mdp.size(), false);
    RationalVector dist(mdp.size());
    dist[x] = 1;

    for (std::size_t t = 0; t < horizon; ++t) {
        if (t > 0)
            dist = dist * eval.chain();
        for (StateIndex y : support(dist)) {
            if (!options.all_times && seen[y])
                continue;
            seen[y] = true;

            AuditEntry e;
            e.visit = slack_from(eval, dist, x, y, t, mdp.constraint_dim());
            e.value_at_y = eval.value(y);
            e.constraint_at_y = eval.constraint(y);

            const Mdp unmodified = mdp.with_initial_state(y);
            e.unmodified = solve(unmodified, y, options.solve);
            e.feasible_unmodified = nonnegative(e.constraint_at_y);
            e.optimal_unmodified = e.feasible_unmodified && e.unmodified.optimal() && e.value_at_y == e.unmodified.value;
            if (e.unmodified.optimal()) {
                e.action_agreement = true;
                for (StateIndex s : reachable_states(mdp, star, y))
                    e.action_agreement = e.action_agreement && (*e.unmodified.policy)[s] == star[s];
            }
            if (!e.unmodified.optimal())
                e.consistency = Consistency::unmodified_infeasible;
            else if (!e.optimal_unmodified)
                e.consistency = Consistency::inconsistent;

            const Mdp residual = build_residual_problem(mdp, e.visit);
            e.residual = solve(residual, y, options.solve);
            RationalVector shifted = e.constraint_at_y;
            for (std::size_t j = 0; j < shifted.size(); ++j)
                shifted[j] -= e.visit.slack[j];
            e.feasible_residual = nonnegative(shifted);
            e.optimal_residual = e.feasible_residual && e.residual.optimal() && e.value_at_y == e.residual.value;

            if (report.search->found()) {
                const auto& cert = *report.search->certificate;
                e.identity = e.value_at_y == cert.gain - dot(cert.mu, e.visit.slack) ? ValueIdentity::verified
                                                                                    : ValueIdentity::failed;
            }
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

} // namespace cmdp
