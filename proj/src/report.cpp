#include "cmdp/report.hpp"

#include <sstream>

namespace cmdp::report {

Json rationals(const RationalVector& v) { return to_strings(v); }

Json states(const Mdp& mdp, const StateSet& set) {
    Json out = Json::array();
    for (auto s : set)
        out.push_back(mdp.state(s).id);
    return out;
}

Json policy(const Mdp& mdp, const Policy& p) {
    Json out = Json::object();
    for (StateIndex s = 0; s < mdp.size(); ++s)
        if (mdp.state(s).actions.size() > 1)
            out[mdp.state(s).id] = mdp.action(s, p[s]).id;
    return out;
}

Json validation(const ValidationReport& rep) {
    Json list = Json::array();
    for (const auto& v : rep.violations)
        list.push_back({{"kind", std::string(to_string(v.kind))},
                        {"state", v.state},
                        {"action", v.action},
                        {"detail", v.detail}});
    return {{"valid", rep.ok()}, {"violations", list}};
}

Json decomposition(const Mdp& mdp, const ChainDecomposition& dec) {
    Json classes = Json::array();
    for (const auto& c : dec.classes)
        classes.push_back(states(mdp, c));
    return {{"classes", classes}, {"transient", states(mdp, dec.transient)}};
}

Json evaluation(const Mdp& mdp, const EvaluationReport& rep) {
    Json classes = Json::array();
    for (std::size_t k = 0; k < rep.class_gains.size(); ++k)
        classes.push_back({{"index", k},
                           {"states", states(mdp, rep.decomposition.classes[k])},
                           {"reward_gain", rep.class_gains[k].reward.str()},
                           {"constraint_gain", rationals(rep.class_gains[k].constraint)},
                           {"absorption", rep.absorption[k].str()}});
    return {{"V", rep.value.str()},
            {"W", rationals(rep.constraint)},
            {"classes", classes},
            {"transient", states(mdp, rep.decomposition.transient)}};
}

Json solve(const Mdp& mdp, const SolveResult& res) {
    Json out = {{"status", res.optimal() ? "optimal" : "infeasible"},
                {"feasible_count", res.feasible_count},
                {"total_count", res.total_count}};
    if (res.optimal()) {
        out["policy"] = policy(mdp, *res.policy);
        out["value"] = res.value.str();
        out["W"] = rationals(res.constraint);
    }
    return out;
}

Json residual(const Mdp& mdp, const ResidualVisit& visit, const Mdp& residual_problem) {
    return {{"from", mdp.state(visit.from).id},
            {"to", mdp.state(visit.to).id},
            {"time", visit.time},
            {"prob_to", visit.prob_to.str()},
            {"slack", rationals(visit.slack)},
            {"bound", rationals(constraint_bound(mdp))},
            {"residual_bound", rationals(constraint_bound(residual_problem))}};
}

Json certificate(const Mdp& mdp, const Certificate& cert) {
    Json potential = Json::object();
    for (StateIndex s = 0; s < cert.potential.size() && s < mdp.size(); ++s)
        if (cert.potential[s])
            potential[mdp.state(s).id] = cert.potential[s]->str();
    return {{"mu", rationals(cert.mu)}, {"gain", cert.gain.str()}, {"potential", potential}};
}

Json certificate_check(const Mdp& mdp, const CertificateReport& rep) {
    Json residuals = Json::array();
    for (const auto& r : rep.residuals)
        residuals.push_back({{"state", mdp.state(r.state).id},
                             {"action", mdp.action(r.state, r.action).id},
                             {"gap", r.gap.str()}});
    Json out = {{"A1", rep.a1},
                {"A2", rep.a2},
                {"A3", rep.a3},
                {"A4", rep.a4},
                {"A5", rep.a5},
                {"W", rationals(rep.constraint)},
                {"verdict", rep.pass() ? "pass" : "fail"},
                {"dominates_on_closure", rep.dominates_on_closure},
                {"residuals", residuals}};
    out["first_failure"] = rep.first_failure ? Json(std::string(to_string(*rep.first_failure))) : Json(nullptr);
    return out;
}

Json certificate_search(const Mdp& mdp, const CertificateSearch& search) {
    Json out = {{"W", rationals(search.constraint)}};
    if (search.found()) {
        out["status"] = "found";
        out["certificate"] = certificate(mdp, *search.certificate);
        return out;
    }
    out["status"] = "unsat";
    out["reason"] = std::string(to_string(search.reason));
    Json classes = Json::array();
    for (const auto& c : search.classes)
        classes.push_back({{"index", c.class_index},
                           {"states", states(mdp, c.states)},
                           {"reward_gain", c.reward_gain.str()},
                           {"constraint_gain", rationals(c.constraint_gain)},
                           {"multiplier", c.multiplier.str()}});
    Json rows = Json::array();
    for (const auto& r : search.rows)
        rows.push_back({{"state", mdp.state(r.state).id},
                        {"action", mdp.action(r.state, r.action).id},
                        {"equality", r.equality},
                        {"multiplier", r.multiplier.str()}});
    out["conflicting_classes"] = classes;
    out["conflicting_rows"] = rows;
    return out;
}

Json audit(const Mdp& mdp, const ConsistencyAuditReport& rep) {
    Json out = {{"from", mdp.state(rep.from).id}, {"original", solve(mdp, rep.original)}};
    if (rep.search)
        out["certificate"] = certificate_search(mdp, *rep.search);
    Json entries = Json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"state", mdp.state(e.visit.to).id},
                           {"time", e.visit.time},
                           {"prob_to", e.visit.prob_to.str()},
                           {"slack", rationals(e.visit.slack)},
                           {"value_at_state", e.value_at_y.str()},
                           {"W_at_state", rationals(e.constraint_at_y)},
                           {"unmodified", solve(mdp, e.unmodified)},
                           {"residual", solve(mdp, e.residual)},
                           {"feasible_unmodified", e.feasible_unmodified},
                           {"optimal_unmodified", e.optimal_unmodified},
                           {"action_agreement", e.action_agreement},
                           {"feasible_residual", e.feasible_residual},
                           {"optimal_residual", e.optimal_residual},
                           {"consistency", std::string(to_string(e.consistency))},
                           {"value_identity", std::string(to_string(e.identity))}});
    out["entries"] = entries;
    out["consistent"] = rep.consistent();
    return out;
}

Json samplepath(const Mdp& mdp, const SamplePathVerdict& v) {
    Json out = {{"feasible", v.feasible}, {"evaluation", evaluation(mdp, v.evaluation)}};
    if (v.witness)
        out["witness"] = {{"index", *v.witness},
                          {"states", states(mdp, v.witness_states)},
                          {"constraint_gain", rationals(v.witness_gain)}};
    else
        out["witness"] = nullptr;
    return out;
}

Json controllability(const Mdp& mdp, const ClassControllability& c) {
    Json out = Json::array();
    for (std::size_t k = 0; k < c.classes.size(); ++k)
        out.push_back({{"index", k},
                       {"states", states(mdp, c.classes[k].states)},
                       {"min_absorption", c.classes[k].min_absorption.str()},
                       {"max_absorption", c.classes[k].max_absorption.str()},
                       {"controllable", c.classes[k].controllable}});
    return out;
}

Json simulation(const Mdp& mdp, const SimulationReport& sim, const EvaluationReport& analytic,
                bool include_trajectory) {
    const auto steps = static_cast<long>(sim.trajectory.horizon());
    Json freq = Json::object();
    for (StateIndex s = 0; s < mdp.size(); ++s)
        if (sim.visits[s] > 0)
            freq[mdp.state(s).id] = Rational(static_cast<long>(sim.visits[s]), steps).str();

    Json out = {{"steps", sim.trajectory.horizon()},
                {"seed", sim.trajectory.seed},
                {"digest", trajectory_digest(sim.trajectory)},
                {"final_state", mdp.state(sim.trajectory.states.back()).id},
                {"empirical", {{"V", sim.value.str()}, {"W", rationals(sim.constraint)}, {"frequencies", freq}}}};

    Json analytic_json = {{"V", analytic.value.str()}, {"W", rationals(analytic.constraint)}};
    const auto& dec = analytic.decomposition;
    if (const auto k = dec.class_of[sim.trajectory.states.back()]) {
        analytic_json["absorbed_class"] = {{"index", *k},
                                           {"reward_gain", analytic.class_gains[*k].reward.str()},
                                           {"constraint_gain", rationals(analytic.class_gains[*k].constraint)},
                                           {"absorption", analytic.absorption[*k].str()}};
    } else {
        analytic_json["absorbed_class"] = nullptr;
    }
    out["analytic"] = analytic_json;
    if (include_trajectory)
        out["trajectory"] = states(mdp, sim.trajectory.states);
    return out;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

} // namespace cmdp::report
