#pragma once

#include "cmdp/model.hpp"

#include <string>
#include <vector>

namespace cmdp::instances {

/// Haviv's multichain example. From transient x the process enters chain 1
/// (5-cycle, reward 0) or y with probability 1/2 each; at y action a enters
/// chain 2 (20-cycle, reward 10) and b enters chain 3 (10-cycle, reward 20).
/// Each chain has one bad state at its entry and c = threshold - 1_S with
/// threshold 1/8 by default.
Mdp haviv(const Rational& threshold = Rational(1, 8));

/// Lottery with a squander/save choice after winning (probability eps) and
/// a yacht/no-yacht choice otherwise; c = 3/10 - 1_S. Chain bad-state
/// frequencies: squander 1, save 1/4, yacht 2/5, no yacht 1/5.
Mdp squander(const Rational& eps = Rational(1, 10));

/// Lottery with a yacht/no-yacht choice in both branches; c = 3/10 - 1_S.
/// Bad-state frequencies: win+yacht 1/10, win+no 0, lose+yacht 2/5, lose+no 1/5.
Mdp yacht(const Rational& eps = Rational(1, 10));

/// Transient x splits evenly into two absorbing states with rewards 1 and 0
/// and constraints -1 and +1.
Mdp twochain();

std::vector<std::string> names();

/// Builds a bundled instance by name; `eps` applies to squander and yacht.
Mdp by_name(const std::string& name, const Rational& eps = Rational(1, 10));

} // namespace cmdp::instances
