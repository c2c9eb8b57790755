#include "cmdp/evaluation.hpp"

#include <stdexcept>

namespace cmdp {

Rational class_gain(const RationalMatrix& chain, const StateSet& cls, const RationalVector& values) {
    const auto p = stationary_distribution(chain, cls);
    Rational g;
    for (std::size_t i = 0; i < cls.size(); ++i)
        g += p[i] * values.at(cls[i]);
    return g;
}

RationalVector class_gain(const RationalMatrix& chain, const StateSet& cls,
                          const std::vector<RationalVector>& values, std::size_t dim) {
    const auto p = stationary_distribution(chain, cls);
    RationalVector g(dim);
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g[j] += p[i] * values.at(cls[i]).at(j);
    return g;
}

PolicyEvaluation::PolicyEvaluation(const Mdp& mdp, const Policy& policy)
    : chain_(induced_chain(mdp, policy)), decomposition_(decompose(chain_)) {
    const auto stage = stagewise(mdp, policy);
    const std::size_t n = mdp.constraint_dim();

    gains_.reserve(decomposition_.classes.size());
    for (const auto& cls : decomposition_.classes) {
        const auto p = stationary_distribution(chain_, cls);
        ClassGain g{Rational(), RationalVector(n)};
        for (std::size_t i = 0; i < cls.size(); ++i) {
            g.reward += p[i] * stage.reward[cls[i]];
            for (std::size_t j = 0; j < n; ++j)
                g.constraint[j] += p[i] * stage.constraint[cls[i]][j];
        }
        gains_.push_back(std::move(g));
    }

    absorption_ = absorption_map(chain_, decomposition_);
    value_.assign(mdp.size(), Rational());
    constraint_.assign(mdp.size(), RationalVector(n));
    for (StateIndex s = 0; s < mdp.size(); ++s)
        for (std::size_t k = 0; k < gains_.size(); ++k) {
            const auto& w = absorption_(s, k);
            if (w.is_zero())
                continue;
            value_[s] += w * gains_[k].reward;
            for (std::size_t j = 0; j < n; ++j)
                constraint_[s][j] += w * gains_[k].constraint[j];
        }
}

EvaluationReport PolicyEvaluation::report(StateIndex x) const {
    return {value_.at(x), constraint_.at(x), decomposition_, gains_, absorption_.row(x)};
}

EvaluationReport evaluate(const Mdp& mdp, const Policy& policy, StateIndex x) {
    return PolicyEvaluation(mdp, policy).report(x);
}

std::pair<Rational, RationalVector> finite_horizon_averages(const Mdp& mdp, const Policy& policy,
                                                            const Trajectory& trajectory) {
    policy.check(mdp);
    const auto& path = trajectory.states;
    if (path.empty())
        throw std::invalid_argument("finite_horizon_averages: horizon must be positive");

    const std::size_t n = mdp.constraint_dim();
    Rational v;
    RationalVector w(n);
    for (std::size_t t = 0; t < path.size(); ++t) {
        const auto& act = mdp.action(path[t], policy[path[t]]);
        if (t + 1 < path.size()) {
            bool possible = false;
            for (const auto& tr : act.transitions)
                possible = possible || (tr.target == path[t + 1] && tr.probability.sign() > 0);
            if (!possible)
                throw std::invalid_argument("finite_horizon_averages: step " + std::to_string(t) +
                                            " has zero probability under the policy");
        }
        v += act.reward;
        for (std::size_t j = 0; j < n; ++j)
            w[j] += act.constraint[j];
    }
    const Rational horizon(static_cast<long>(path.size()));
    v /= horizon;
    for (auto& c : w)
        c /= horizon;
    return {v, w};
}

} // namespace cmdp
