#include "cmdp/simulate.hpp"

#include <random>
#include <stdexcept>

namespace cmdp {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

struct Step {
    std::vector<std::uint64_t> threshold;  // cumulative; last entry is a catch-all
    std::vector<StateIndex> target;
};

std::uint64_t scaled_threshold(const Rational& cumulative) {
    // floor(cumulative * 2^64), cumulative in [0, 1)
    mpz_class scaled = cumulative.numerator();
    scaled <<= 64;
    scaled /= cumulative.denominator();
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, scaled.get_mpz_t());
    return out;
}

} // namespace

SimulationReport simulate(const Mdp& mdp, const Policy& policy, StateIndex x, std::uint64_t steps,
                          std::uint64_t seed) {
    policy.check(mdp);
    if (steps == 0)
        throw std::invalid_argument("simulate: horizon must be positive");

    std::vector<Step> table(mdp.size());
    for (StateIndex s = 0; s < mdp.size(); ++s) {
        Rational cumulative;
        auto& step = table[s];
        for (const auto& tr : mdp.action(s, policy[s]).transitions) {
            if (tr.probability.sign() <= 0)
                continue;
            cumulative += tr.probability;
            step.target.push_back(tr.target);
            step.threshold.push_back(cumulative < Rational(1) ? scaled_threshold(cumulative) : 0);
        }
        if (step.target.empty())
            throw std::invalid_argument("simulate: state '" + mdp.state(s).id + "' has no successor");
    }

    std::mt19937_64 engine(seed);
    SimulationReport rep;
    rep.trajectory.seed = seed;
    rep.trajectory.states.reserve(steps);
    rep.visits.assign(mdp.size(), 0);

    StateIndex s = x;
    for (std::uint64_t t = 0; t < steps; ++t) {
        rep.trajectory.states.push_back(s);
        ++rep.visits[s];
        if (t + 1 == steps)
            break;
        const auto& step = table[s];
        const std::uint64_t u = engine();
        std::size_t j = 0;
        while (j + 1 < step.target.size() && u >= step.threshold[j])
            ++j;
        s = step.target[j];
    }

    const std::size_t n = mdp.constraint_dim();
    rep.constraint.assign(n, Rational());
    for (StateIndex v = 0; v < mdp.size(); ++v) {
        if (rep.visits[v] == 0)
            continue;
        const Rational count(static_cast<long>(rep.visits[v]));
        const auto& act = mdp.action(v, policy[v]);
        rep.value += count * act.reward;
        for (std::size_t j = 0; j < n; ++j)
            rep.constraint[j] += count * act.constraint[j];
    }
    const Rational horizon(static_cast<long>(steps));
    rep.value /= horizon;
    for (auto& c : rep.constraint)
        c /= horizon;
    return rep;
}

std::uint64_t run_seed(std::uint64_t base, std::uint64_t run) {
    std::uint64_t z = base + run * golden_gamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t trajectory_digest(const Trajectory& trajectory) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (StateIndex s : trajectory.states) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (static_cast<std::uint64_t>(s) >> (8 * byte)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    }
    return h;
}

} // namespace cmdp
