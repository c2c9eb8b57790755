#pragma once

#include "cmdp/certificate.hpp"
#include "cmdp/evaluation.hpp"
#include "cmdp/residual.hpp"
#include "cmdp/samplepath.hpp"
#include "cmdp/simulate.hpp"
#include "cmdp/solver.hpp"

#include <json.hpp>

namespace cmdp::report {

// nlohmann::json stores objects in std::map, so keys come out sorted.
using Json = nlohmann::json;

Json rationals(const RationalVector& v);
Json states(const Mdp& mdp, const StateSet& set);
/// Decision states only (states with more than one action).
Json policy(const Mdp& mdp, const Policy& policy);

Json validation(const ValidationReport& rep);
Json decomposition(const Mdp& mdp, const ChainDecomposition& dec);
Json evaluation(const Mdp& mdp, const EvaluationReport& rep);
Json solve(const Mdp& mdp, const SolveResult& res);
Json residual(const Mdp& mdp, const ResidualVisit& visit, const Mdp& residual_problem);
Json certificate(const Mdp& mdp, const Certificate& cert);
Json certificate_check(const Mdp& mdp, const CertificateReport& rep);
Json certificate_search(const Mdp& mdp, const CertificateSearch& search);
Json audit(const Mdp& mdp, const ConsistencyAuditReport& rep);
Json samplepath(const Mdp& mdp, const SamplePathVerdict& v);
Json controllability(const Mdp& mdp, const ClassControllability& c);
Json simulation(const Mdp& mdp, const SimulationReport& sim, const EvaluationReport& analytic,
                bool include_trajectory);

/// Compact single-line dump with a trailing newline.
std::string dump(const Json& j);

} // namespace cmdp::report
