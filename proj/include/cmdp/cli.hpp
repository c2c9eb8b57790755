#pragma once

#include <string>
#include <vector>

namespace cmdp::cli {

/// 0: success or feasible; 1: a mathematically negative finding (infeasible,
/// UNSAT, failed certificate, time inconsistency, not decomposable);
/// 2: usage or input error.
struct CommandOutcome {
    int exit_code = 0;
    std::string out;  ///< JSON report
    std::string err;  ///< diagnostics and usage text
};

/// Runs one command; `args` excludes the program name.
CommandOutcome run(const std::vector<std::string>& args);

} // namespace cmdp::cli
