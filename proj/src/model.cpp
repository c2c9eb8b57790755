#include "cmdp/model.hpp"

#include <set>
#include <sstream>

namespace cmdp {

Mdp::Mdp(std::vector<State> states, std::size_t constraint_dim, std::string initial_state)
    : states_(std::move(states)), constraint_dim_(constraint_dim), initial_label_(std::move(initial_state)) {
    for (StateIndex s = 0; s < states_.size(); ++s)
        index_.try_emplace(states_[s].id, s);
}

StateIndex Mdp::initial_state() const { return state_index(initial_label_); }

std::optional<StateIndex> Mdp::find_state(std::string_view id) const {
    if (auto it = index_.find(std::string(id)); it != index_.end())
        return it->second;
    return std::nullopt;
}

StateIndex Mdp::state_index(std::string_view id) const {
    if (auto s = find_state(id))
        return *s;
    throw ModelError("unknown state '" + std::string(id) + "'");
}

std::optional<ActionIndex> Mdp::find_action(StateIndex s, std::string_view id) const {
    const auto& actions = state(s).actions;
    for (ActionIndex a = 0; a < actions.size(); ++a)
        if (actions[a].id == id)
            return a;
    return std::nullopt;
}

Mdp Mdp::with_constraints(std::size_t dim, const std::vector<std::vector<RationalVector>>& constraints) const {
    if (constraints.size() != states_.size())
        throw ModelError("with_constraints: state count mismatch");
    auto states = states_;
    for (StateIndex s = 0; s < states.size(); ++s) {
        if (constraints[s].size() != states[s].actions.size())
            throw ModelError("with_constraints: action count mismatch at '" + states[s].id + "'");
        for (ActionIndex a = 0; a < states[s].actions.size(); ++a) {
            if (constraints[s][a].size() != dim)
                throw ModelError("with_constraints: dimension mismatch at '" + states[s].id + "'");
            states[s].actions[a].constraint = constraints[s][a];
        }
    }
    return Mdp(std::move(states), dim, initial_label_);
}

Mdp Mdp::with_initial_state(StateIndex s) const { return Mdp(states_, constraint_dim_, state(s).id); }

Policy Policy::first_actions(const Mdp& mdp) { return Policy(std::vector<ActionIndex>(mdp.size(), 0)); }

Policy Policy::parse(const Mdp& mdp, std::string_view text) {
    std::vector<std::optional<ActionIndex>> chosen(mdp.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        const auto item = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ModelError("policy entry '" + std::string(item) + "' is not state=action");
        const StateIndex s = mdp.state_index(item.substr(0, eq));
        const auto action = item.substr(eq + 1);
        const auto a = mdp.find_action(s, action);
        if (!a)
            throw ModelError("state '" + mdp.state(s).id + "' has no action '" + std::string(action) + "'");
        if (chosen[s] && *chosen[s] != *a)
            throw ModelError("policy assigns state '" + mdp.state(s).id + "' twice");
        chosen[s] = *a;
    }
    std::vector<ActionIndex> choice(mdp.size(), 0);
    for (StateIndex s = 0; s < mdp.size(); ++s) {
        if (chosen[s])
            choice[s] = *chosen[s];
        else if (mdp.state(s).actions.size() > 1)
            throw ModelError("policy does not assign decision state '" + mdp.state(s).id + "'");
    }
    return Policy(std::move(choice));
}

void Policy::check(const Mdp& mdp) const {
    if (choice_.size() != mdp.size())
        throw ModelError("policy covers " + std::to_string(choice_.size()) + " states, model has " +
                         std::to_string(mdp.size()));
    for (StateIndex s = 0; s < mdp.size(); ++s)
        if (choice_[s] >= mdp.state(s).actions.size())
            throw ModelError("policy selects a missing action at state '" + mdp.state(s).id + "'");
}

std::string Policy::str(const Mdp& mdp) const {
    std::ostringstream out;
    bool first = true;
    for (StateIndex s = 0; s < mdp.size(); ++s) {
        if (mdp.state(s).actions.size() < 2)
            continue;
        out << (first ? "" : ",") << mdp.state(s).id << '=' << mdp.action(s, choice_.at(s)).id;
        first = false;
    }
    return out.str();
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::empty_states: return "empty_states";
    case ViolationKind::duplicate_state: return "duplicate_state";
    case ViolationKind::empty_actions: return "empty_actions";
    case ViolationKind::duplicate_action: return "duplicate_action";
    case ViolationKind::negative_probability: return "negative_probability";
    case ViolationKind::duplicate_transition: return "duplicate_transition";
    case ViolationKind::unknown_target: return "unknown_target";
    case ViolationKind::row_sum: return "row_sum";
    case ViolationKind::constraint_dimension: return "constraint_dimension";
    case ViolationKind::unknown_initial_state: return "unknown_initial_state";
    }
    return "unknown";
}

ValidationReport validate(const Mdp& mdp) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::string state, std::string action, std::string detail) {
        report.violations.push_back({kind, std::move(state), std::move(action), std::move(detail)});
    };

    if (mdp.size() == 0)
        add(ViolationKind::empty_states, "", "", "model has no states");

    std::set<std::string> seen_states;
    for (const auto& st : mdp.states()) {
        if (!seen_states.insert(st.id).second)
            add(ViolationKind::duplicate_state, st.id, "", "state label repeated");
        if (st.actions.empty())
            add(ViolationKind::empty_actions, st.id, "", "state has no actions");

        std::set<std::string> seen_actions;
        for (const auto& act : st.actions) {
            if (!seen_actions.insert(act.id).second)
                add(ViolationKind::duplicate_action, st.id, act.id, "action label repeated");

            Rational total;
            std::set<StateIndex> targets;
            for (const auto& tr : act.transitions) {
                if (tr.target >= mdp.size()) {
                    add(ViolationKind::unknown_target, st.id, act.id,
                        "target index " + std::to_string(tr.target) + " out of range");
                    continue;
                }
                if (!targets.insert(tr.target).second)
                    add(ViolationKind::duplicate_transition, st.id, act.id,
                        "target '" + mdp.state(tr.target).id + "' listed twice");
                if (tr.probability.sign() < 0)
                    add(ViolationKind::negative_probability, st.id, act.id,
                        "P(" + mdp.state(tr.target).id + ") = " + tr.probability.str());
                total += tr.probability;
            }
            if (total != Rational(1))
                add(ViolationKind::row_sum, st.id, act.id, "probabilities sum to " + total.str());
            if (act.constraint.size() != mdp.constraint_dim())
                add(ViolationKind::constraint_dimension, st.id, act.id,
                    "constraint has length " + std::to_string(act.constraint.size()) + ", expected " +
                        std::to_string(mdp.constraint_dim()));
        }
    }
    if (!mdp.find_state(mdp.initial_label()))
        add(ViolationKind::unknown_initial_state, mdp.initial_label(), "", "initial state is not a state");
    return report;
}

RationalMatrix induced_chain(const Mdp& mdp, const Policy& policy) {
    policy.check(mdp);
    RationalMatrix m(mdp.size(), mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s)
        for (const auto& tr : mdp.action(s, policy[s]).transitions)
            m(s, tr.target) += tr.probability;
    return m;
}

PolicyStagewise stagewise(const Mdp& mdp, const Policy& policy) {
    policy.check(mdp);
    PolicyStagewise out;
    out.reward.reserve(mdp.size());
    out.constraint.reserve(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s) {
        const auto& act = mdp.action(s, policy[s]);
        out.reward.push_back(act.reward);
        out.constraint.push_back(act.constraint);
    }
    return out;
}

} // namespace cmdp
