#pragma once

#include "cmdp/evaluation.hpp"
#include "cmdp/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace cmdp {

/// Lagrangian optimality witness (mu, V*(x), L*) for a policy started at x.
struct Certificate {
    RationalVector mu;
    Rational gain;
    /// Indexed by state; states outside the certificate's domain may be empty.
    std::vector<std::optional<Rational>> potential;
};

class CertificateError : public ModelError {
public:
    using ModelError::ModelError;
};

enum class Condition { a1, a2, a3, a4, a5 };
std::string_view to_string(Condition c);

/// gap = gain + L(s) - (r(s,a) + mu^T c(s,a) + E_{s,a} L).
struct BellmanResidual {
    StateIndex state;
    ActionIndex action;
    Rational gap;
};

struct CertificateReport {
    bool a1 = false;  ///< W^pi(x) >= 0
    bool a2 = false;  ///< mu >= 0
    bool a3 = false;  ///< mu^T W^pi(x) = 0
    bool a4 = false;  ///< Bellman equation with one gain at every pi-reachable state
    bool a5 = false;  ///< pi attains the maximum at every pi-reachable state
    RationalVector constraint;              ///< W^pi(x)
    StateSet reachable;                     ///< states the Bellman checks covered
    std::vector<BellmanResidual> residuals; ///< every (reachable state, action)
    std::optional<Condition> first_failure;
    /// Informational: gain + L(s) >= every action's Lagrangian value on the
    /// whole all-actions closure of x. Not part of the verdict.
    bool dominates_on_closure = false;

    bool pass() const { return a1 && a2 && a3 && a4 && a5; }
};

/// Checks conditions A1-A5. Throws CertificateError if mu has the wrong
/// length or the potential is missing at a reachable state or at a
/// successor of one.
CertificateReport check_certificate(const Mdp& mdp, StateIndex x, const Policy& policy,
                                    const Certificate& cert);

struct CertificateOptions {
    std::size_t closure_cap = 4096;
};

enum class UnsatReason {
    constraint_violated,  ///< A1 fails: W^pi(x) has a negative component
    gain_conflict,        ///< reachable classes cannot share one Lagrangian gain
    bellman_infeasible,   ///< the full Bellman system has no solution
};
std::string_view to_string(UnsatReason r);

/// A reachable recurrent class in an infeasible gain-equalization system;
/// its Lagrangian gain is reward_gain + mu^T constraint_gain.
struct ClassConflict {
    std::size_t class_index;
    StateSet states;
    Rational reward_gain;
    RationalVector constraint_gain;
    Rational multiplier;
};

struct RowConflict {
    StateIndex state;
    ActionIndex action;
    bool equality;
    Rational multiplier;
};

struct CertificateSearch {
    std::optional<Certificate> certificate;
    UnsatReason reason = UnsatReason::bellman_infeasible;
    RationalVector constraint;  ///< W^pi(x)
    std::vector<ClassConflict> classes;
    std::vector<RowConflict> rows;

    bool found() const { return certificate.has_value(); }
};

/// Searches for a certificate by exact phase-1 simplex. The potential is
/// normalized to L(x) = 0 and is zero outside the all-actions closure.
/// A returned certificate always passes check_certificate.
CertificateSearch find_certificate(const Mdp& mdp, StateIndex x, const Policy& policy,
                                   const CertificateOptions& options = {});

} // namespace cmdp
