#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sst/samples.hpp"
#include "sst/spectral_traces.hpp"

using namespace sst;

TEST_CASE("heat curve equals the direct spectral sum") {
  const int N = 96;
  const auto d = dirac(N);
  TruncatedOperator eye(N, "I");
  eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
  const std::vector<double> times{1e-4, 1e-3, 1e-2};
  const auto curve = heat_trace_curve(eye, d, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    double direct = 0.0;
    for (int k = -N; k <= N; ++k)
      direct += std::exp(-times[i] * std::pow(2.0 * std::numbers::pi * k, 2));
    CHECK(std::abs(curve[i] - Complex(direct, 0.0)) < 1e-12);
  }
  CHECK_THROWS_AS(heat_trace_curve(eye, d, std::vector<double>{1e-12}), TruncationError);
}

TEST_CASE("config defaults respect the truncation invariant") {
  for (int N : {128, 256, 512}) {
    const auto cfg = HeatFitConfig::defaults_for(N);
    CHECK_NOTHROW(cfg.validate(N));
    CHECK(std::exp(-cfg.u_min * N * N) < 1e-16);
    const auto grid = cfg.grid();
    CHECK(grid.size() == 24);
    CHECK(grid.front() == doctest::Approx(cfg.u_min));
    CHECK(grid.back() == doctest::Approx(cfg.u_max));
  }
  HeatFitConfig bad = HeatFitConfig::defaults_for(512);
  bad.u_min = 1e-7;
  CHECK_THROWS_AS(bad.validate(512), ConfigError);
}

TEST_CASE("residue of pi(f)|D|^-1 at the identity: zeta oracle at N = 256") {
  const int N = 256;
  const auto group = standard_group();
  const auto f = PeriodicFunction::constant(0.8) + random_band_function(6, 29, 0.5);
  const auto pf =
      represent(CrossedProductElement::monomial(group, f, GroupWord::identity()), N);
  const auto cfg = HeatFitConfig::defaults_for(N);
  const auto res = residue_of_part(pf, CircleDiffeo::identity(), cfg);
  const Complex expect = 2.0 * f.integral();
  CHECK(std::abs(res.value - expect) < 1e-3 * std::abs(expect));
  CHECK(res.fit_residual < 1e-6);
  CHECK(res.reliable);
  CHECK(std::abs(wodzicki_closed_form(f) - expect) == 0.0);

  // spec-shaped entry point: caller attaches |D|^-1 (integer normalized)
  const auto P = pf * inverse_diagonal(abs_dirac_integer(N));
  const auto res2 = residue_functional(P, CircleDiffeo::identity(), cfg);
  CHECK(std::abs(res2.value - res.value) < 1e-12);
}

TEST_CASE("vanishing for a fixed-point diffeomorphism at N = 256") {
  // the sharp 1e-3 bound is an N = 512 statement (acceptance suite); at
  // N = 256 the fit window sits 4x higher and the bound degrades accordingly
  const int N = 256;
  const auto group = standard_group();
  const auto F = random_band_function(6, 31, 1.0);
  const auto pF =
      represent(CrossedProductElement::monomial(group, F, GroupWord::identity()), N);
  const auto cfg = HeatFitConfig::defaults_for(N);
  const auto chi = CircleDiffeo::sine_family(0.3);
  const auto res = residue_of_part(pF, chi, cfg);
  CHECK(std::abs(res.value) < 5e-3 * F.sup_norm());
}

TEST_CASE("zero prefactor gives zero residue") {
  const int N = 128;
  TruncatedOperator zero(N, "0");
  const auto res = residue_of_part(zero, CircleDiffeo::identity(),
                                   HeatFitConfig::defaults_for(N));
  CHECK(std::abs(res.value) == 0.0);
  CHECK(res.fit_residual == 0.0);
}

TEST_CASE("ill-conditioned fits are rejected") {
  const int N = 128;
  auto cfg = HeatFitConfig::defaults_for(N);
  cfg.condition_bound = 1.0;
  TruncatedOperator eye(N, "I");
  eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
  CHECK_THROWS_AS(residue_of_part(eye, CircleDiffeo::identity(), cfg), IllConditionedFit);
}

TEST_CASE("dixmier surrogate: shuffle identity and trivial cases") {
  const int N = 192;
  const auto group = standard_group();
  const auto cfg = HeatFitConfig::defaults_for(N);
  const auto w = GroupWord::generator(0);
  const auto gf = random_band_function(4, 37, 0.8);
  const auto hf = random_band_function(4, 41, 0.8);
  const auto t_mono = CrossedProductElement::monomial(group, gf, w);
  const auto a_mono = CrossedProductElement::monomial(group, hf, w.inverse());
  const auto T = represent(t_mono, N);

  // Tr_w(T sigma^-1(a) |D|^-1) = Tr_w(a T |D|^-1)
  const Complex lhs = dixmier_surrogate(T, sigma(a_mono, -1), cfg);
  const auto pa = represent(a_mono, N);
  const Complex rhs = residue_from_diagonal(diagonal_of_product(pa, T), N, cfg).value;
  CHECK(std::abs(lhs - rhs) < 1e-3);
  CHECK(std::abs(lhs) > 1e-3);  // nonvacuous pair

  // a = 1, T = pi(f): the |D| route reduces to the residue of pi(f)|D|^-1,
  // while the signed route cancels by parity
  const auto f = PeriodicFunction::constant(1.1) + random_band_function(4, 43, 0.4);
  const auto pf =
      represent(CrossedProductElement::monomial(group, f, GroupWord::identity()), N);
  const auto one = CrossedProductElement::scalar(group, 1.0);
  const Complex abs_route = dixmier_surrogate(pf, one, cfg, /*use_phase=*/false);
  CHECK(std::abs(abs_route - 2.0 * f.integral()) < 2e-3);
  const Complex signed_route = dixmier_surrogate(pf, one, cfg, /*use_phase=*/true);
  CHECK(std::abs(signed_route) < 1e-6);

  // T = 0
  TruncatedOperator zero(N, "0");
  CHECK(std::abs(dixmier_surrogate(zero, one, cfg)) == 0.0);
}
