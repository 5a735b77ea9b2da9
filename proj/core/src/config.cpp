#include "sst/config.hpp"

#include <fstream>

namespace sst {

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  RunConfig cfg;
  cfg.apply_json(j);
  return cfg;
}

void RunConfig::apply_json(const nlohmann::json& j) {
  static const char* known[] = {"n_trunc",    "band_limit",   "seed",
                                "tol_scale",  "out_path",     "csv_path",
                                "n_ladder",   "heat_u_min",   "heat_u_max",
                                "heat_count", "heat_power_count", "heat_condition_bound"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ConfigError("config: unknown key '" + key + "'");
  }
  if (j.contains("n_trunc")) n_trunc = j.at("n_trunc").get<int>();
  if (j.contains("band_limit")) band_limit = j.at("band_limit").get<int>();
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol_scale")) tol_scale = j.at("tol_scale").get<double>();
  if (j.contains("out_path")) out_path = j.at("out_path").get<std::string>();
  if (j.contains("csv_path")) csv_path = j.at("csv_path").get<std::string>();
  if (j.contains("n_ladder")) n_ladder = j.at("n_ladder").get<std::vector<int>>();
  if (j.contains("heat_u_min")) heat_u_min = j.at("heat_u_min").get<double>();
  if (j.contains("heat_u_max")) heat_u_max = j.at("heat_u_max").get<double>();
  if (j.contains("heat_count")) heat_count = j.at("heat_count").get<int>();
  if (j.contains("heat_power_count")) heat_power_count = j.at("heat_power_count").get<int>();
  if (j.contains("heat_condition_bound"))
    heat_condition_bound = j.at("heat_condition_bound").get<double>();

  if (n_trunc < 8) throw ConfigError("config: n_trunc too small");
  if (band_limit < 1) throw ConfigError("config: band_limit must be positive");
  if (heat_power_count < 2 || heat_power_count > 8)
    throw ConfigError("config: heat_power_count out of range [2, 8]");
}

HeatFitConfig RunConfig::heat_config(int truncation) const {
  HeatFitConfig cfg = HeatFitConfig::defaults_for(truncation);
  if (heat_u_min > 0.0) cfg.u_min = heat_u_min;
  if (heat_u_max > 0.0) cfg.u_max = heat_u_max;
  cfg.count = heat_count;
  cfg.basis_powers.clear();
  for (int i = 0; i < heat_power_count; ++i)
    cfg.basis_powers.push_back(-0.5 + 0.5 * static_cast<double>(i));
  cfg.condition_bound = heat_condition_bound;
  return cfg;
}

nlohmann::json RunConfig::echo() const {
  return nlohmann::json{{"n_trunc", n_trunc},
                        {"band_limit", band_limit},
                        {"seed", seed},
                        {"tol_scale", tol_scale},
                        {"out_path", out_path},
                        {"csv_path", csv_path},
                        {"n_ladder", n_ladder},
                        {"heat_u_min", heat_u_min},
                        {"heat_u_max", heat_u_max},
                        {"heat_count", heat_count},
                        {"heat_power_count", heat_power_count},
                        {"heat_condition_bound", heat_condition_bound}};
}

}  // namespace sst
