#pragma once

// Seeded random instance families for property tests.

#include "cmdp/model.hpp"

#include <cstdint>
#include <random>

namespace gen {

struct Shape {
    std::size_t max_states = 8;
    std::size_t max_actions = 3;
    std::size_t max_targets = 3;
    std::size_t max_dim = 2;
    /// Every action reaches every state with positive probability.
    bool full_support = false;
};

/// Sparse rational kernels; multichain structure arises naturally.
cmdp::Mdp random_mdp(std::mt19937_64& rng, const Shape& shape);

/// Random policy for `mdp`.
cmdp::Policy random_policy(std::mt19937_64& rng, const cmdp::Mdp& mdp);

/// Decomposable by construction: a few closed classes whose every action
/// keeps a Hamiltonian cycle and stays inside the class, plus transient
/// states that only move forward (to later transient states or into classes).
/// State 0 is transient whenever there is at least one transient state.
cmdp::Mdp random_decomposable(std::mt19937_64& rng, std::size_t max_classes, std::size_t dim);

/// Rational uniformly drawn from {lo, lo + 1/den, ..., hi}.
cmdp::Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den);

} // namespace gen
