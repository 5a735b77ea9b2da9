#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sst/config.hpp"
#include "sst/report.hpp"

using namespace sst;

TEST_CASE("check rows: pass iff abs_err <= tol, JSON round trip") {
  auto r = make_check("x.y", "identity", Complex(1.0, 0.0), Complex(1.0, 1e-12), 1e-10);
  CHECK(r.pass);
  CHECK(r.abs_err == doctest::Approx(1e-12));
  auto bad = make_check("x.z", "identity", Complex(1.0, 0.0), Complex(2.0, 0.0), 1e-10);
  CHECK(!bad.pass);

  r.seed = 42;
  const auto j = to_json(r);
  const auto back = check_from_json(j);
  CHECK(back.check_id == r.check_id);
  CHECK(back.claim == r.claim);
  CHECK(back.abs_err == r.abs_err);
  CHECK(back.pass == r.pass);
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 42);
}

TEST_CASE("report files: header first, rows sorted, appending preserved") {
  const std::string path = "/tmp/sst_test_report.jsonl";
  std::remove(path.c_str());
  std::vector<CheckReport> checks;
  checks.push_back(make_residual_check("b.second", "claim2", 0.0, 1.0));
  checks.push_back(make_residual_check("a.first", "claim1", 0.0, 1.0));
  append_report(path, {{"n_trunc", 64}}, checks);
  append_report(path, {{"n_trunc", 64}}, {checks[0]});

  std::ifstream in(path);
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].at("type") == "header");
  CHECK(rows[1].at("check_id") == "a.first");
  CHECK(rows[2].at("check_id") == "b.second");
  CHECK(rows[3].at("type") == "header");
  std::remove(path.c_str());
}

TEST_CASE("convergence tables serialize with the fixed column header") {
  ConvergenceTable t{"demo", {{64, Complex(1.5, 0.0), 0.0}, {128, Complex(1.25, 0.0), 0.25}}};
  const auto text = to_csv(t);
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  CHECK(line == "N,value_re,value_im,delta");
  std::getline(is, line);
  CHECK(line.substr(0, 3) == "64,");
}

TEST_CASE("config: file parsing, overrides, unknown keys rejected") {
  const std::string path = "/tmp/sst_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"n_trunc": 128, "seed": 9, "tol_scale": 2.0})";
  }
  auto cfg = RunConfig::from_file(path);
  CHECK(cfg.n_trunc == 128);
  CHECK(cfg.seed == 9);
  CHECK(cfg.tol_scale == 2.0);
  CHECK(cfg.band_limit == 32);  // untouched default
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << R"({"n_trunk": 128})";  // typo in the key
  }
  CHECK_THROWS_AS(RunConfig::from_file(path), ConfigError);
  std::remove(path.c_str());

  nlohmann::json bad{{"n_trunc", 2}};
  RunConfig c2;
  CHECK_THROWS_AS(c2.apply_json(bad), ConfigError);
}

TEST_CASE("heat config derives the window from the truncation") {
  RunConfig cfg;
  const auto h512 = cfg.heat_config(512);
  CHECK(h512.u_min == doctest::Approx(37.0 / (512.0 * 512.0)));
  CHECK(h512.basis_powers.size() == 5);
  CHECK(h512.basis_powers.front() == -0.5);
  cfg.heat_u_max = 1e-3;
  CHECK(cfg.heat_config(512).u_max == 1e-3);
}
