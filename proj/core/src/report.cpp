#include "sst/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sst {

CheckReport make_check(std::string check_id, std::string claim, Complex lhs, Complex rhs,
                       double tol, nlohmann::json params,
                       std::optional<std::uint64_t> seed) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.claim = std::move(claim);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.tol = tol;
  r.pass = r.abs_err <= tol;
  r.seed = seed;
  return r;
}

CheckReport make_residual_check(std::string check_id, std::string claim, double residual,
                                double tol, nlohmann::json params,
                                std::optional<std::uint64_t> seed) {
  return make_check(std::move(check_id), std::move(claim), Complex(residual, 0.0),
                    Complex(0.0, 0.0), tol, std::move(params), seed);
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{
      {"check_id", r.check_id}, {"claim", r.claim},
      {"params", r.params},     {"lhs_re", r.lhs.real()},
      {"lhs_im", r.lhs.imag()}, {"rhs_re", r.rhs.real()},
      {"rhs_im", r.rhs.imag()}, {"abs_err", r.abs_err},
      {"tol", r.tol},           {"pass", r.pass},
      {"runtime_ms", r.runtime_ms}};
  if (r.seed)
    j["seed"] = *r.seed;
  else
    j["seed"] = nullptr;
  return j;
}

CheckReport check_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.claim = j.at("claim").get<std::string>();
  r.params = j.at("params");
  r.lhs = Complex(j.at("lhs_re").get<double>(), j.at("lhs_im").get<double>());
  r.rhs = Complex(j.at("rhs_re").get<double>(), j.at("rhs_im").get<double>());
  r.abs_err = j.at("abs_err").get<double>();
  r.tol = j.at("tol").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.runtime_ms = j.at("runtime_ms").get<long>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

bool all_pass(std::span<const CheckReport> checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void append_report(const std::string& path, const nlohmann::json& header,
                   std::vector<CheckReport> checks) {
  if (path.empty()) return;
  std::sort(checks.begin(), checks.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("append_report: cannot open " + path);
  nlohmann::json h = header;
  h["type"] = "header";
  out << h.dump() << '\n';
  for (const auto& c : checks) out << to_json(c).dump() << '\n';
}

std::string to_csv(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "N,value_re,value_im,delta\n";
  os.precision(17);
  for (const auto& row : table.rows) {
    os << row.truncation << ',' << row.value.real() << ',' << row.value.imag() << ','
       << row.delta << '\n';
  }
  return os.str();
}

void write_csv(const std::string& path, std::span<const ConvergenceTable> tables) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path);
  for (const auto& t : tables) {
    out << "# table " << t.name << '\n';
    out << to_csv(t);
  }
}

}  // namespace sst
