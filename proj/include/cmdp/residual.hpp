#pragma once

#include "cmdp/certificate.hpp"
#include "cmdp/evaluation.hpp"
#include "cmdp/solver.hpp"

#include <optional>
#include <vector>

namespace cmdp {

class ResidualError : public ModelError {
public:
    using ModelError::ModelError;
};

/// Constraint budget consumed between x and a state y reached at time t:
///   slack = -E[W(X_t) | X_t != y] Pr{X_t != y} / Pr{X_t = y}.
/// Positive slack means the constraint is more stringent at y.
struct ResidualVisit {
    StateIndex from = 0;
    StateIndex to = 0;
    std::size_t time = 0;
    Rational prob_to;
    RationalVector slack;
};

/// Smallest t with Pr{X_t = y | X_0 = x} > 0, or nullopt if y is unreachable.
std::optional<std::size_t> first_visit_time(const Mdp& mdp, const Policy& policy, StateIndex x, StateIndex y);

/// Throws ResidualError when y has probability zero at time t. Without a
/// time, the first visit time is used.
ResidualVisit residual_slack(const Mdp& mdp, const Policy& policy, StateIndex x, StateIndex y,
                            std::optional<std::size_t> t = std::nullopt);

/// Same kernel and rewards, constraints shifted to c - slack, started at y.
Mdp build_residual_problem(const Mdp& mdp, const ResidualVisit& visit);

/// Largest stagewise value of each constraint component. For constraints of
/// the form beta - 1_S this is the threshold beta.
RationalVector constraint_bound(const Mdp& mdp);

enum class Consistency {
    consistent,             ///< pi* is optimal for the unmodified problem at y
    inconsistent,           ///< the unmodified problem at y prefers something else
    unmodified_infeasible,  ///< the unmodified problem at y has no feasible policy
};
std::string_view to_string(Consistency c);

enum class ValueIdentity { verified, failed, not_applicable };
std::string_view to_string(ValueIdentity v);

struct AuditEntry {
    ResidualVisit visit;
    Rational value_at_y;         ///< V^{pi*}(y)
    RationalVector constraint_at_y;  ///< W^{pi*}(y), original constraints
    SolveResult unmodified;
    SolveResult residual;
    bool feasible_unmodified = false;
    bool optimal_unmodified = false;
    /// The unmodified optimum chooses like pi* at every state pi* reaches from y.
    bool action_agreement = false;
    bool feasible_residual = false;
    bool optimal_residual = false;
    Consistency consistency = Consistency::consistent;
    ValueIdentity identity = ValueIdentity::not_applicable;
};

struct AuditOptions {
    bool all_times = false;
    SolveOptions solve;
    CertificateOptions certificate;
};

struct ConsistencyAuditReport {
    StateIndex from = 0;
    SolveResult original;
    std::optional<CertificateSearch> search;  ///< present when original is optimal
    std::vector<AuditEntry> entries;

    bool consistent() const;
};

/// Re-solves the unmodified and residual problems at every state reachable
/// from x under the solver's optimal policy.
ConsistencyAuditReport audit_time_consistency(const Mdp& mdp, StateIndex x, const AuditOptions& options = {});

} // namespace cmdp
