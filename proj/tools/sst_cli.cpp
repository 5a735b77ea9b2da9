// Command-line driver: batch verification suites and one-off evaluations.
//
//   sst verify-matrix [--config F] [--seed S] [--out PATH] [--tol-scale X]
//   sst verify-circle [--config F] [--seed S] [--out PATH] [--n-trunc N]
//   sst compute EXPR --args JSON [--n-trunc N]
//   sst residue --symbol JSON --chi JSON [--n-trunc N]
//
// Reports are JSON lines (one CheckReport per line, header first); exit code
// is zero iff every emitted row passes.

#include <CLI11.hpp>
#include <iostream>

#include "sst/matrix_triple.hpp"
#include "sst/samples.hpp"
#include "sst/suites.hpp"
#include "sst/transverse_cocycles.hpp"

namespace {

using namespace sst;

PeriodicFunction function_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "sin") return PeriodicFunction::sine(1);
    if (name == "cos") return PeriodicFunction::cosine(1);
    if (name == "one") return PeriodicFunction::constant(1.0);
    throw ConfigError("function literal: unknown name '" + name + "'");
  }
  int band = 0;
  for (const auto& t : j) band = std::max(band, std::abs(t.at(0).get<int>()));
  std::vector<Complex> c(2 * static_cast<std::size_t>(band) + 1, Complex(0.0));
  for (const auto& t : j)
    c[static_cast<std::size_t>(t.at(0).get<int>() + band)] =
        Complex(t.at(1).get<double>(), t.at(2).get<double>());
  return PeriodicFunction::from_coefficients(std::move(c));
}

// Build a single-generator group from a diffeo literal; word "g" is the
// generator, "e" the identity.
DiffeoGroupPtr group_from_literal(const nlohmann::json& j) {
  std::vector<std::pair<std::string, CircleDiffeo>> gens;
  gens.emplace_back("g", diffeo_from_json(j));
  return std::make_shared<DiffeoGroup>(std::move(gens));
}

int emit_and_exit(const RunConfig& cfg, SuiteResult result) {
  for (const auto& c : result.checks) {
    std::cout << (c.pass ? "pass " : "FAIL ") << c.check_id << "  abs_err=" << c.abs_err
              << "  tol=" << c.tol << '\n';
  }
  append_report(cfg.out_path, cfg.echo(), result.checks);
  if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, result.tables);
  const bool ok = all_pass(result.checks);
  std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << " (" << result.checks.size()
            << " checks)\n";
  return ok ? 0 : 1;
}

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::int64_t seed = -1;
  int n_trunc = 0;
  double tol_scale = 0.0;

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (n_trunc > 0) cfg.n_trunc = n_trunc;
    if (tol_scale > 0.0) cfg.tol_scale = tol_scale;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!csv_path.empty()) cfg.csv_path = csv_path;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--seed", flags.seed, "base random seed");
  cmd->add_option("--out", flags.out_path, "report output path (JSON lines)");
  cmd->add_option("--csv", flags.csv_path, "convergence-table CSV path");
  cmd->add_option("--n-trunc", flags.n_trunc, "operator truncation");
  cmd->add_option("--tol-scale", flags.tol_scale, "tolerance multiplier");
}

int run_compute(const std::string& expr, const std::string& args_text, int n_trunc) {
  const nlohmann::json args =
      args_text.empty() ? nlohmann::json::object() : nlohmann::json::parse(args_text);

  if (expr == "tau" || expr == "psi1_closed" || expr == "psi1_spectral") {
    const auto group = group_from_literal(
        args.value("phi", nlohmann::json{{"type", "sine"}, {"epsilon", 0.3}}));
    MonomialPair pair;
    pair.left.coeff = function_from_json(args.value("f", nlohmann::json("sin")));
    pair.right.coeff = function_from_json(args.value("g", nlohmann::json("cos")));
    pair.left.word = GroupWord::generator(0);
    pair.right.word = pair.left.word.inverse();
    if (group->realize(pair.left.word).is_identity(1e-14)) {
      pair.left.word = GroupWord::identity();
      pair.right.word = GroupWord::identity();
    }
    Complex value;
    if (expr == "tau") {
      value = tau(group, pair);
    } else if (expr == "psi1_closed") {
      value = psi1_closed(group, pair);
    } else {
      const int N = n_trunc > 0 ? n_trunc : 256;
      value = psi1_spectral(group, pair, N, HeatFitConfig::defaults_for(N)).value;
    }
    std::cout << expr << " = " << value.real() << (value.imag() < 0 ? " - " : " + ")
              << std::abs(value.imag()) << "i\n";
    return 0;
  }

  if (expr == "residue") {
    const int N = n_trunc > 0 ? n_trunc : 256;
    const auto group = standard_group();
    const PeriodicFunction f = function_from_json(args.value("f", nlohmann::json("one")));
    const CircleDiffeo chi = diffeo_from_json(
        args.value("chi", nlohmann::json{{"type", "identity"}}));
    const auto pf =
        represent(CrossedProductElement::monomial(group, f, GroupWord::identity()), N);
    const auto res = residue_of_part(pf, chi, HeatFitConfig::defaults_for(N));
    std::cout << "residue = " << res.value.real() << " + " << res.value.imag()
              << "i  (fit residual " << res.fit_residual << ")\n";
    return 0;
  }

  if (expr == "index_pair") {
    const auto seed = args.value("seed", 7u);
    const int half_dim = args.value("half_dim", 4);
    const auto T = MatrixTwistedTriple::random(half_dim, seed);
    const int rp = args.value("rank_plus", 3), rm = args.value("rank_minus", 1);
    const Matrix p = T.random_even_projection(rp, rm, seed + 1);
    const auto res = index_pair(T, IdempotentData::twisted(T, p), 2);
    std::cout << "index+ = " << res.index_plus << ", index- = " << res.index_minus
              << ", phi+ = " << res.phi_plus.real() << ", phi- = " << res.phi_minus.real()
              << " (defect " << res.pairing_defect << ")\n";
    return 0;
  }

  if (expr == "chern_phi") {
    const auto seed = args.value("seed", 11u);
    const int half_dim = args.value("half_dim", 3);
    const auto T = MatrixTwistedTriple::random(half_dim, seed);
    std::vector<Matrix> tuple;
    for (int i = 0; i < 3; ++i) tuple.push_back(T.random_even_element(seed + 2 + i));
    const Complex v = chern_phi(T, tuple);
    std::cout << "chern_phi = " << v.real() << " + " << v.imag() << "i\n";
    return 0;
  }

  throw UnknownExpressionError("compute: unknown expression '" + expr + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for twisted spectral triples on the circle"};
  app.require_subcommand(1);

  CommonFlags mflags, cflags;
  auto* vm = app.add_subcommand("verify-matrix", "finite-dimensional triple identities");
  add_common(vm, mflags);
  auto* vc = app.add_subcommand("verify-circle", "crossed-product and residue checks");
  add_common(vc, cflags);

  std::string expr, expr_args;
  int compute_n = 0;
  auto* comp = app.add_subcommand("compute", "evaluate one named expression");
  comp->add_option("expr", expr,
                   "one of tau, psi1_closed, psi1_spectral, residue, index_pair, chern_phi")
      ->required();
  comp->add_option("--args", expr_args, "JSON arguments");
  comp->add_option("--n-trunc", compute_n, "operator truncation");

  std::string r_symbol = "one", r_chi, r_out;
  int r_n = 512;
  auto* rescmd = app.add_subcommand("residue", "residue functional of pi(f)|D|^-1 against chi");
  rescmd->add_option("--symbol", r_symbol, "function literal JSON (or sin/cos/one)");
  rescmd->add_option("--chi", r_chi, "diffeo literal JSON (default identity)");
  rescmd->add_option("--n-trunc", r_n, "operator truncation");
  rescmd->add_option("--out", r_out, "append a CheckReport row here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (vm->parsed()) {
      const RunConfig cfg = mflags.resolve();
      return emit_and_exit(cfg, run_matrix_suite(cfg));
    }
    if (vc->parsed()) {
      const RunConfig cfg = cflags.resolve();
      return emit_and_exit(cfg, run_circle_suite(cfg));
    }
    if (comp->parsed()) return run_compute(expr, expr_args, compute_n);
    if (rescmd->parsed()) {
      nlohmann::json args{{"f", r_symbol == "one" || r_symbol == "sin" || r_symbol == "cos"
                                    ? nlohmann::json(r_symbol)
                                    : nlohmann::json::parse(r_symbol)}};
      if (!r_chi.empty()) args["chi"] = nlohmann::json::parse(r_chi);
      return run_compute("residue", args.dump(), r_n);
    }
  } catch (const sst::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
