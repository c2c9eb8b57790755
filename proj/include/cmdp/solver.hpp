#pragma once

#include "cmdp/evaluation.hpp"
#include "cmdp/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

namespace cmdp {

constexpr std::uint64_t default_policy_cap = std::uint64_t{1} << 20;

class PolicyCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic stationary policies in lexicographic order of
/// (state index, action index): state 0 is the most significant digit.
class PolicyEnumerator {
public:
    explicit PolicyEnumerator(const Mdp& mdp);

    /// Number of policies, saturating at UINT64_MAX.
    std::uint64_t count() const { return count_; }
    Policy at(std::uint64_t index) const;

    /// Calls `visit` on every policy in order; throws PolicyCapExceeded when
    /// count() exceeds `cap`.
    void for_each(const std::function<void(const Policy&)>& visit,
                  std::uint64_t cap = default_policy_cap) const;

    void require_within(std::uint64_t cap) const;

private:
    std::vector<std::size_t> radix_;
    std::uint64_t count_ = 1;
};

std::vector<Policy> enumerate_policies(const Mdp& mdp, std::uint64_t cap = default_policy_cap);

struct SolveOptions {
    std::uint64_t policy_cap = default_policy_cap;
    unsigned threads = 1;
};

enum class SolveStatus { optimal, infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<Policy> policy;
    Rational value;
    RationalVector constraint;
    std::uint64_t feasible_count = 0;
    std::uint64_t total_count = 0;

    bool optimal() const { return status == SolveStatus::optimal; }
};

/// max V^pi(x) subject to W^pi(x) >= 0 over deterministic stationary
/// policies. Ties go to the lexicographically first policy irrespective of
/// the thread count.
SolveResult solve(const Mdp& mdp, StateIndex x, const SolveOptions& options = {});

} // namespace cmdp
