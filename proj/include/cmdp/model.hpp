#pragma once

#include "cmdp/linalg.hpp"
#include "cmdp/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmdp {

using StateIndex = std::size_t;
using ActionIndex = std::size_t;

/// Sorted list of state indices.
using StateSet = std::vector<StateIndex>;

struct Transition {
    StateIndex target = 0;
    Rational probability;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct Action {
    std::string id;
    Rational reward;
    RationalVector constraint;
    std::vector<Transition> transitions;

    friend bool operator==(const Action&, const Action&) = default;
};

struct State {
    std::string id;
    std::vector<Action> actions;

    friend bool operator==(const State&, const State&) = default;
};

/// Error raised for malformed models, policies, or instance documents.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite MDP with scalar reward r(s,a) and vector constraint c(s,a) in Q^n.
///
/// Immutable once built. The constructor does not enforce the model
/// invariants so that validate() can report every violation; operations
/// other than validate() assume a valid model.
class Mdp {
public:
    Mdp() = default;
    Mdp(std::vector<State> states, std::size_t constraint_dim, std::string initial_state);

    std::size_t size() const { return states_.size(); }
    const std::vector<State>& states() const { return states_; }
    const State& state(StateIndex s) const { return states_.at(s); }
    const Action& action(StateIndex s, ActionIndex a) const { return states_.at(s).actions.at(a); }
    std::size_t constraint_dim() const { return constraint_dim_; }
    const std::string& initial_label() const { return initial_label_; }

    /// Index of the initial state; throws ModelError if the label is unknown.
    StateIndex initial_state() const;

    std::optional<StateIndex> find_state(std::string_view id) const;
    StateIndex state_index(std::string_view id) const;
    std::optional<ActionIndex> find_action(StateIndex s, std::string_view id) const;

    /// Same kernel and rewards with replaced constraint vectors of a new dimension.
    /// `constraints[s][a]` must have length `dim`.
    Mdp with_constraints(std::size_t dim, const std::vector<std::vector<RationalVector>>& constraints) const;
    Mdp with_initial_state(StateIndex s) const;

    friend bool operator==(const Mdp& a, const Mdp& b) {
        return a.states_ == b.states_ && a.constraint_dim_ == b.constraint_dim_ &&
               a.initial_label_ == b.initial_label_;
    }

private:
    std::vector<State> states_;
    std::size_t constraint_dim_ = 0;
    std::string initial_label_;
    std::unordered_map<std::string, StateIndex> index_;
};

/// Deterministic stationary policy: one action index per state.
class Policy {
public:
    Policy() = default;
    explicit Policy(std::vector<ActionIndex> choice) : choice_(std::move(choice)) {}

    /// Every state takes its first action.
    static Policy first_actions(const Mdp& mdp);

    /// Parses comma-separated "state=action" pairs. States with a single
    /// action may be omitted; omitting a decision state is an error.
    static Policy parse(const Mdp& mdp, std::string_view text);

    ActionIndex operator[](StateIndex s) const { return choice_.at(s); }
    std::size_t size() const { return choice_.size(); }
    const std::vector<ActionIndex>& choices() const { return choice_; }

    /// Throws ModelError unless the policy is total and every choice exists.
    void check(const Mdp& mdp) const;

    /// "state=action" pairs for states with more than one action.
    std::string str(const Mdp& mdp) const;

    friend bool operator==(const Policy&, const Policy&) = default;
    friend auto operator<=>(const Policy&, const Policy&) = default;

private:
    std::vector<ActionIndex> choice_;
};

/// Realized state sequence X_0..X_{T-1} under a policy.
struct Trajectory {
    std::vector<StateIndex> states;
    std::uint64_t seed = 0;

    std::size_t horizon() const { return states.size(); }
    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

enum class ViolationKind {
    empty_states,
    duplicate_state,
    empty_actions,
    duplicate_action,
    negative_probability,
    duplicate_transition,
    unknown_target,
    row_sum,
    constraint_dimension,
    unknown_initial_state,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string state;
    std::string action;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Lists every violated model invariant; empty iff the model is valid.
ValidationReport validate(const Mdp& mdp);

/// Square stochastic matrix M[s][s'] = P(s' | s, policy(s)).
RationalMatrix induced_chain(const Mdp& mdp, const Policy& policy);

/// Stagewise reward and constraint vectors selected by a policy.
struct PolicyStagewise {
    RationalVector reward;
    std::vector<RationalVector> constraint;
};

PolicyStagewise stagewise(const Mdp& mdp, const Policy& policy);

} // namespace cmdp
