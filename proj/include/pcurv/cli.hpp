#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pcurv/serialize.hpp"

namespace pcurv {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitBudget = 3 };

// Determinant, poles, p-curvature and per-pole certificates of a kernel map.
Json verify_report(const KernelMap& s);

// args excludes the program name. Reports go to out (or --output), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcurv
