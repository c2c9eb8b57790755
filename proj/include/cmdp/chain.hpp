#pragma once

#include "cmdp/linalg.hpp"
#include "cmdp/model.hpp"

#include <optional>
#include <vector>

namespace cmdp {

/// Recurrent classes (closed strongly connected components of the support
/// graph) and transient states of a finite chain.
///
/// Classes are ordered by their smallest state index and each class lists its
/// states in increasing order, so decompositions are reproducible.
struct ChainDecomposition {
    std::vector<StateSet> classes;
    StateSet transient;
    /// class_of[s] is the index of s's class, or nullopt for transient states.
    std::vector<std::optional<std::size_t>> class_of;

    friend bool operator==(const ChainDecomposition&, const ChainDecomposition&) = default;
};

/// Support-graph SCC decomposition; only which entries are nonzero matters.
ChainDecomposition decompose(const RationalMatrix& chain);

/// Same decomposition computed from an adjacency list (used for the union
/// graph over all actions).
ChainDecomposition decompose_graph(const std::vector<StateSet>& successors);

/// Unique invariant distribution of a recurrent class, indexed like `cls`.
/// Throws std::invalid_argument if `cls` is not closed and strongly connected.
RationalVector stationary_distribution(const RationalMatrix& chain, const StateSet& cls);

/// Hitting probabilities of every recurrent class from every state:
/// entry (s, k) is Pr{chain enters classes[k] | X_0 = s}.
RationalMatrix absorption_map(const RationalMatrix& chain, const ChainDecomposition& dec);

/// One row of absorption_map(), indexed by class.
RationalVector absorption_probabilities(const RationalMatrix& chain, StateIndex from);
RationalVector absorption_probabilities(const RationalMatrix& chain, const ChainDecomposition& dec,
                                        StateIndex from);

/// States with positive probability at some time t <= |states| - 1 from x.
StateSet reachable_states(const Mdp& mdp, const Policy& policy, StateIndex x);

/// Closure of x under every action of every state.
StateSet reachable_states_all(const Mdp& mdp, StateIndex x);

/// Row x of M^t.
RationalVector state_distribution_at(const RationalMatrix& chain, StateIndex x, std::size_t t);

/// Support of a distribution, in increasing state order.
StateSet support(const RationalVector& dist);

} // namespace cmdp
