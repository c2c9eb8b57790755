#include "cmdp/solver.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace cmdp {

PolicyEnumerator::PolicyEnumerator(const Mdp& mdp) {
    radix_.reserve(mdp.size());
    for (const auto& st : mdp.states()) {
        const std::uint64_t k = st.actions.size();
        radix_.push_back(st.actions.size());
        if (k == 0) {
            count_ = 0;
        } else if (count_ > std::numeric_limits<std::uint64_t>::max() / k) {
            count_ = std::numeric_limits<std::uint64_t>::max();
        } else {
            count_ *= k;
        }
    }
}

Policy PolicyEnumerator::at(std::uint64_t index) const {
    std::vector<ActionIndex> choice(radix_.size(), 0);
    for (std::size_t s = radix_.size(); s-- > 0;) {
        choice[s] = index % radix_[s];
        index /= radix_[s];
    }
    return Policy(std::move(choice));
}

void PolicyEnumerator::require_within(std::uint64_t cap) const {
    if (count_ > cap)
        throw PolicyCapExceeded("policy count " + std::to_string(count_) + " exceeds cap " +
                                std::to_string(cap));
}

void PolicyEnumerator::for_each(const std::function<void(const Policy&)>& visit, std::uint64_t cap) const {
    require_within(cap);
    if (count_ == 0)
        return;
    std::vector<ActionIndex> choice(radix_.size(), 0);
    while (true) {
        visit(Policy(choice));
        std::size_t s = radix_.size();
        while (s > 0) {
            --s;
            if (++choice[s] < radix_[s])
                break;
            choice[s] = 0;
            if (s == 0)
                return;
        }
        if (radix_.empty())
            return;
    }
}

std::vector<Policy> enumerate_policies(const Mdp& mdp, std::uint64_t cap) {
    std::vector<Policy> out;
    PolicyEnumerator(mdp).for_each([&](const Policy& p) { out.push_back(p); }, cap);
    return out;
}

namespace {

struct Partial {
    std::optional<std::uint64_t> best;
    Rational value;
    RationalVector constraint;
    std::uint64_t feasible = 0;
};

Partial scan(const Mdp& mdp, StateIndex x, const PolicyEnumerator& policies, std::uint64_t begin,
             std::uint64_t end) {
    Partial part;
    for (std::uint64_t i = begin; i < end; ++i) {
        const PolicyEvaluation eval(mdp, policies.at(i));
        if (!nonnegative(eval.constraint(x)))
            continue;
        ++part.feasible;
        if (!part.best || eval.value(x) > part.value) {
            part.best = i;
            part.value = eval.value(x);
            part.constraint = eval.constraint(x);
        }
    }
    return part;
}

} // namespace

SolveResult solve(const Mdp& mdp, StateIndex x, const SolveOptions& options) {
    const PolicyEnumerator policies(mdp);
    policies.require_within(options.policy_cap);
    const std::uint64_t total = policies.count();

    const std::uint64_t workers =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, total));
    std::vector<Partial> parts(workers);
    if (workers == 1) {
        parts[0] = scan(mdp, x, policies, 0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (std::uint64_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                const auto begin = std::min(total, w * chunk);
                const auto end = std::min(total, begin + chunk);
                parts[w] = scan(mdp, x, policies, begin, end);
            });
        for (auto& t : pool)
            t.join();
    }

    // Chunks are in enumeration order, so a strict comparison keeps the
    // lexicographically first maximizer.
    SolveResult result;
    result.total_count = total;
    const Partial* best = nullptr;
    for (const auto& part : parts) {
        result.feasible_count += part.feasible;
        if (part.best && (!best || part.value > best->value))
            best = &part;
    }
    if (best) {
        result.status = SolveStatus::optimal;
        result.policy = policies.at(*best->best);
        result.value = best->value;
        result.constraint = best->constraint;
    }
    return result;
}

} // namespace cmdp
