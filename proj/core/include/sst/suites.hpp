#pragma once

// The two verification suites behind the CLI: finite-dimensional triple
// identities (exact, roundoff tolerances) and circle-side regularized checks
// (truncation and fit tolerances).  Each check is one CheckReport row.

#include "sst/config.hpp"
#include "sst/report.hpp"

namespace sst {

struct SuiteResult {
  std::vector<CheckReport> checks;
  std::vector<ConvergenceTable> tables;
};

SuiteResult run_matrix_suite(const RunConfig& cfg);
SuiteResult run_circle_suite(const RunConfig& cfg);

}  // namespace sst
