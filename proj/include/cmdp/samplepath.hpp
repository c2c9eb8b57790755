#pragma once

#include "cmdp/evaluation.hpp"
#include "cmdp/solver.hpp"

#include <optional>

namespace cmdp {

/// Almost-sure form of the constraint: lim W_T >= 0 on every sample path.
struct SamplePathVerdict {
    bool feasible = true;
    std::optional<std::size_t> witness;  ///< first reachable class with a negative gain
    StateSet witness_states;
    RationalVector witness_gain;
    EvaluationReport evaluation;
};

/// Feasible iff every recurrent class reachable from x has constraint gain
/// >= 0 componentwise.
SamplePathVerdict samplepath_feasible(const Mdp& mdp, const Policy& policy, StateIndex x);

class NotDecomposable : public ModelError {
public:
    NotDecomposable(const std::string& what, StateSet offending)
        : ModelError(what), offending_(std::move(offending)) {}
    const StateSet& offending() const { return offending_; }

private:
    StateSet offending_;
};

/// Recurrent-class partition shared by every deterministic policy. It is the
/// closed-class partition of the union support graph; each policy chain is
/// checked to reproduce it. Throws NotDecomposable naming the states whose
/// classification changes under some policy.
ChainDecomposition trans_policy_classes(const Mdp& mdp, std::uint64_t cap = default_policy_cap);

struct ClassControl {
    StateSet states;
    Rational min_absorption;
    Rational max_absorption;
    bool controllable = false;
};

struct ClassControllability {
    std::vector<ClassControl> classes;
};

/// Range of the absorption probability from x into each class over all
/// deterministic policies.
ClassControllability controllable_classes(const Mdp& mdp, StateIndex x, std::uint64_t cap = default_policy_cap);

/// One expected-constraint component per (class, original component):
/// component k*n + j is c_j(s,a) 1{s in class k}.
Mdp convert_to_expected(const Mdp& mdp, StateIndex x, std::uint64_t cap = default_policy_cap);

/// convert_to_expected restricted to controllable classes.
Mdp selective_convert(const Mdp& mdp, StateIndex x, std::uint64_t cap = default_policy_cap);

/// Indices of the classes kept by each conversion, in component order.
std::vector<std::size_t> converted_classes(const Mdp& mdp, StateIndex x, bool selective,
                                           std::uint64_t cap = default_policy_cap);

} // namespace cmdp
