#pragma once

// Run configuration: a single JSON file with documented keys; command-line
// flags override file values, and every effective value is echoed into the
// report header so tolerances stay traceable.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sst/spectral_traces.hpp"

namespace sst {

struct RunConfig {
  int n_trunc = 256;          // operator truncation for circle checks
  int band_limit = 32;        // default input band limit
  std::uint64_t seed = 1;     // base seed; per-check seeds derive from it
  double tol_scale = 1.0;     // multiplies every tolerance
  std::string out_path = "report.jsonl";
  std::string csv_path;       // convergence tables (empty: skip)
  std::vector<int> n_ladder = {64, 128, 256, 512};

  // heat-fit overrides; zeros mean "derive from the truncation in use"
  double heat_u_min = 0.0;
  double heat_u_max = 0.0;
  int heat_count = 24;
  int heat_power_count = 5;  // basis powers -1/2, 0, .., (count-2)/2
  double heat_condition_bound = 1e16;

  static RunConfig from_file(const std::string& path);  // ConfigError on bad keys
  void apply_json(const nlohmann::json& j);

  HeatFitConfig heat_config(int truncation) const;
  nlohmann::json echo() const;  // all effective values
};

}  // namespace sst
