#pragma once

// Test-only reference implementations. Nothing here calls into the chain,
// evaluation, or solver modules, so agreement with them is meaningful.

#include "cmdp/model.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace oracle {

using Vec = std::vector<mpq_class>;
using Mat = std::vector<Vec>;

/// Any solution of A z = b (free variables set to zero), or nullopt if the
/// system is inconsistent. Plain Gauss-Jordan on mpq_class.
std::optional<Vec> solve_any(Mat a, Vec b);

struct Gains {
    Vec value;                    ///< per start state
    std::vector<Vec> constraint;  ///< per start state, length n
};

/// Long-run average gains of a policy from the multichain evaluation
/// equations (I - P) g = 0, g + (I - P) h = f. The gain g is unique even
/// though h is not.
Gains multichain_gains(const cmdp::Mdp& mdp, const std::vector<std::size_t>& choice);

struct BruteForce {
    bool feasible = false;
    std::vector<std::size_t> choice;
    mpq_class value;
    Vec constraint;
    std::size_t feasible_count = 0;
    std::size_t total_count = 0;
};

/// Enumerates every deterministic policy with an odometer (last state
/// fastest), evaluates it with multichain_gains, keeps W(x) >= 0, and returns
/// the first maximizer.
BruteForce brute_force_solve(const cmdp::Mdp& mdp, std::size_t x);

/// Power-iteration estimate of a stationary distribution in doubles.
std::vector<double> power_iteration(const std::vector<std::vector<double>>& p, std::size_t iterations);

mpq_class to_mpq(const cmdp::Rational& r);

} // namespace oracle
