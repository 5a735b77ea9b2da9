#pragma once

// Structured verification reports: one JSON line per check, append-only
// files, deterministic ordering (rows sorted by check_id before emission).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sst/fourier.hpp"  // Complex

namespace sst {

struct CheckReport {
  std::string check_id;
  std::string claim;  // which identity the check verifies, e.g. "sigma-trace"
  nlohmann::json params = nlohmann::json::object();
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  long runtime_ms = 0;
  std::optional<std::uint64_t> seed;
};

// Fills abs_err = |lhs - rhs| and pass = (abs_err <= tol).
CheckReport make_check(std::string check_id, std::string claim, Complex lhs, Complex rhs,
                       double tol, nlohmann::json params = nlohmann::json::object(),
                       std::optional<std::uint64_t> seed = std::nullopt);
// For checks carrying a precomputed residual: lhs = residual, rhs = 0.
CheckReport make_residual_check(std::string check_id, std::string claim, double residual,
                                double tol, nlohmann::json params = nlohmann::json::object(),
                                std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json to_json(const CheckReport& r);
CheckReport check_from_json(const nlohmann::json& j);

bool all_pass(std::span<const CheckReport> checks);

// Appends a header line {"type":"header", ...config echo...} followed by the
// checks sorted by check_id.  Empty path writes nothing.
void append_report(const std::string& path, const nlohmann::json& header,
                   std::vector<CheckReport> checks);

// Per-N convergence tables, serialized as CSV "N,value_re,value_im,delta".
struct ConvergenceRow {
  int truncation = 0;
  Complex value{0.0, 0.0};
  double delta = 0.0;  // |value(N) - value(previous N)|
};

struct ConvergenceTable {
  std::string name;
  std::vector<ConvergenceRow> rows;
};

std::string to_csv(const ConvergenceTable& table);
void write_csv(const std::string& path, std::span<const ConvergenceTable> tables);

}  // namespace sst
