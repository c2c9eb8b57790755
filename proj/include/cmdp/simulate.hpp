#pragma once

#include "cmdp/model.hpp"

#include <cstdint>
#include <vector>

namespace cmdp {

/// Seeded Monte Carlo run of a policy.
///
/// The generator is std::mt19937_64 seeded directly with `seed`; each step
/// draws one 64-bit word u and takes the first successor whose cumulative
/// probability threshold floor(P_cum * 2^64) exceeds u, in kernel order.
/// Both are fully specified, so trajectories are bit-identical across
/// platforms. Transitions narrower than 2^-64 are never sampled.
struct SimulationReport {
    Trajectory trajectory;
    std::vector<std::uint64_t> visits;  ///< per state
    Rational value;                     ///< V_T, exact given the path
    RationalVector constraint;          ///< W_T
};

SimulationReport simulate(const Mdp& mdp, const Policy& policy, StateIndex x, std::uint64_t steps,
                          std::uint64_t seed);

/// Seed of run `run` in a batch: splitmix64(base + run * golden_gamma).
std::uint64_t run_seed(std::uint64_t base, std::uint64_t run);

/// FNV-1a over the state indices, for cheap trajectory comparison.
std::uint64_t trajectory_digest(const Trajectory& trajectory);

} // namespace cmdp
