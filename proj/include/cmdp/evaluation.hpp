#pragma once

#include "cmdp/chain.hpp"
#include "cmdp/model.hpp"

#include <utility>
#include <vector>

namespace cmdp {

struct ClassGain {
    Rational reward;
    RationalVector constraint;
};

/// V^pi(x) and W^pi(x) of the long-run average criterion, exactly.
struct EvaluationReport {
    Rational value;
    RationalVector constraint;
    ChainDecomposition decomposition;
    std::vector<ClassGain> class_gains;
    /// Absorption probability from x into each class of `decomposition`.
    RationalVector absorption;
};

/// Stationary average of per-state values over a recurrent class.
Rational class_gain(const RationalMatrix& chain, const StateSet& cls, const RationalVector& values);

/// Componentwise class_gain for vector-valued stagewise functions
/// (`values[s]` has length `dim`).
RationalVector class_gain(const RationalMatrix& chain, const StateSet& cls,
                          const std::vector<RationalVector>& values, std::size_t dim);

/// Evaluates a policy from every start state at once. V and W at each state
/// are absorption-weighted class gains.
class PolicyEvaluation {
public:
    PolicyEvaluation(const Mdp& mdp, const Policy& policy);

    const RationalMatrix& chain() const { return chain_; }
    const ChainDecomposition& decomposition() const { return decomposition_; }
    const std::vector<ClassGain>& class_gains() const { return gains_; }
    const RationalMatrix& absorption() const { return absorption_; }

    const Rational& value(StateIndex s) const { return value_.at(s); }
    const RationalVector& constraint(StateIndex s) const { return constraint_.at(s); }
    const RationalVector& values() const { return value_; }
    const std::vector<RationalVector>& constraints() const { return constraint_; }

    EvaluationReport report(StateIndex x) const;

private:
    RationalMatrix chain_;
    ChainDecomposition decomposition_;
    std::vector<ClassGain> gains_;
    RationalMatrix absorption_;
    RationalVector value_;
    std::vector<RationalVector> constraint_;
};

EvaluationReport evaluate(const Mdp& mdp, const Policy& policy, StateIndex x);

/// V_T and W_T along a realized path. Throws on an empty trajectory or on a
/// step with zero kernel probability under the policy.
std::pair<Rational, RationalVector> finite_horizon_averages(const Mdp& mdp, const Policy& policy,
                                                            const Trajectory& trajectory);

} // namespace cmdp
