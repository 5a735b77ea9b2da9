#include <doctest.h>

#include <numbers>
#include <random>

#include "sst/fourier.hpp"
#include "sst/samples.hpp"

using namespace sst;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// quadratic-cost reference transform
std::vector<Complex> naive_dft(const std::vector<Complex>& a) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      out[j] += a[m] * std::polar(1.0, -kTwoPi * static_cast<double>(j * m % n) /
                                           static_cast<double>(n));
  return out;
}
}  // namespace

TEST_CASE("radix-2 transform matches the naive reference") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<Complex> a(64);
  for (auto& z : a) z = Complex(g(rng), g(rng));
  auto expect = naive_dft(a);
  auto got = a;
  fft::transform(got, false);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-11);
}

TEST_CASE("eval: constants, cosine at zero, sine against direct evaluation") {
  CHECK(PeriodicFunction::constant(1.0).eval(0.37).real() == doctest::Approx(1.0));
  CHECK(std::abs(PeriodicFunction::cosine(1).eval(0.0) - Complex(1.0)) < 1e-14);
  const double direct = std::sin(kTwoPi * 0.3);
  CHECK(std::abs(PeriodicFunction::sine(1).eval(0.3) - Complex(direct)) < 1e-12);
}

TEST_CASE("sampling round trip through the transform") {
  const auto f = random_band_function(32, 99);
  const std::size_t g = grid_size_for(32);
  const auto vals = f.sample(g);
  const auto back = project_samples(vals, 32);
  CHECK(back.tail_ratio < 1e-28);
  for (int k = -32; k <= 32; ++k)
    CHECK(std::abs(back.fn.coefficient(k) - f.coefficient(k)) < 1e-12);
  // pointwise agreement with eval
  for (std::size_t j = 0; j < g; j += 37) {
    const double x = static_cast<double>(j) / static_cast<double>(g);
    CHECK(std::abs(f.eval(x) - vals[j]) < 1e-12);
  }
}

TEST_CASE("derivative multiplies mode k by 2 pi i k") {
  const auto f = random_band_function(8, 3);
  const auto d = f.derivative();
  for (int k = -8; k <= 8; ++k)
    CHECK(std::abs(d.coefficient(k) - Complex(0.0, kTwoPi * k) * f.coefficient(k)) < 1e-15);
  CHECK(d.band() == f.band());
}

TEST_CASE("real flag reflects Hermitian symmetry") {
  CHECK(random_band_function(6, 5).is_real());
  auto broken = PeriodicFunction::harmonic(2, Complex(0.3, 0.1));
  CHECK(!broken.is_real());
}

TEST_CASE("quadrature is the zero coefficient and respects Parseval") {
  CHECK(PeriodicFunction::constant(1.0).integral() == Complex(1.0));
  CHECK(std::abs(PeriodicFunction::sine(1).integral()) == 0.0);

  // Parseval: integral(f g) = sum_k c_k(f) c_{-k}(g), against a dense grid
  const auto f = random_band_function(10, 11);
  const auto g = random_band_function(7, 13);
  const Complex via_product = (f * g).integral();
  const Complex via_pairing = parseval_pairing(f, g);
  CHECK(std::abs(via_product - via_pairing) < 1e-12);
  const std::size_t grid = 4096;
  Complex direct(0.0);
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    direct += f.eval(x) * g.eval(x);
  }
  direct /= static_cast<double>(grid);
  CHECK(std::abs(via_product - direct) < 1e-12);
}

TEST_CASE("product coefficients agree with a pointwise grid oracle") {
  const auto f = random_band_function(9, 17);
  const auto g = random_band_function(5, 19);
  const auto p = f * g;
  const std::size_t grid = grid_size_for(p.band());
  for (std::size_t j = 0; j < grid; j += 11) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    CHECK(std::abs(p.eval(x) - f.eval(x) * g.eval(x)) < 1e-12);
  }
}

TEST_CASE("projection reports the discarded tail") {
  // a pure mode outside the kept band carries all the energy
  const auto f = PeriodicFunction::harmonic(20);
  const auto vals = f.sample(256);
  const auto proj = project_samples(vals, 10);
  CHECK(proj.tail_ratio == doctest::Approx(1.0));
  CHECK(proj.fn.l2_norm() < 1e-14);
}
