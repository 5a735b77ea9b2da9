#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sst/operators.hpp"
#include "sst/samples.hpp"

using namespace sst;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("dirac diagonal at small truncation") {
  const auto d = dirac(1);
  CHECK(d.entry(-1, -1) == Complex(-kTwoPi, 0.0));
  CHECK(d.entry(0, 0) == Complex(0.0, 0.0));
  CHECK(d.entry(1, 1) == Complex(kTwoPi, 0.0));
  CHECK((d.matrix() - d.matrix().adjoint()).norm() == 0.0);

  const auto ad = abs_dirac(2);
  CHECK(ad.entry(0, 0) == Complex(1.0, 0.0));  // patched zero mode
  CHECK(ad.entry(-2, -2) == Complex(2.0 * kTwoPi, 0.0));
  CHECK(heat(dirac(2), 1.0).entry(0, 0) == Complex(1.0, 0.0));  // true zero eigenvalue
}

TEST_CASE("represent: multiplication operators are Toeplitz in the symbol") {
  const auto group = standard_group();
  const auto f = random_band_function(4, 7);
  const int N = 16;
  const auto op = represent(CrossedProductElement::monomial(group, f, GroupWord::identity()), N);
  for (int k = -N; k <= N; ++k) {
    for (int m = -N; m <= N; ++m) {
      CHECK(std::abs(op.entry(k, m) - f.coefficient(k - m)) < 1e-13);
    }
  }
}

TEST_CASE("represent: rotations give diagonal characters") {
  const auto group = standard_group(0.3, 0.25);
  const int N = 12;
  const auto op = represent(CrossedProductElement::monomial(
                                group, PeriodicFunction::constant(1.0), GroupWord::generator(1)),
                            N);
  for (int m = -N; m <= N; ++m) {
    CHECK(std::abs(op.entry(m, m) - std::polar(1.0, kTwoPi * m * 0.25)) < 1e-12);
    CHECK(std::abs(op.entry(m, -m) - (m == 0 ? op.entry(0, 0) : Complex(0.0))) < 1e-12);
  }

  // translation by the rotation word is the opposite character
  const auto tr = translation(*group, GroupWord::generator(1), N);
  for (int m = -N; m <= N; ++m)
    CHECK(std::abs(tr.entry(m, m) - std::polar(1.0, -kTwoPi * m * 0.25)) < 1e-12);
}

TEST_CASE("unitarity of pi(U_w) on interior modes") {
  const auto group = standard_group(0.3, 0.25);
  const int N = 128;
  const auto pu = represent(CrossedProductElement::monomial(
                                group, PeriodicFunction::constant(1.0), GroupWord::generator(0)),
                            N);
  const auto prod = pu.adjoint() * pu;
  TruncatedOperator eye(N, "I");
  eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
  CHECK((prod - eye).interior().operator_norm() < 1e-8);
}

TEST_CASE("twisted commutator: zero on constants, symbol on plain functions") {
  const auto group = standard_group();
  const int N = 32;
  const auto one = CrossedProductElement::scalar(group, 1.0);
  CHECK(twisted_commutator(dirac(N), one, N).operator_norm() < 1e-12);

  // plain f: ordinary commutator with symbol (1/i) f'
  const auto f = random_band_function(4, 11);
  const auto tw = twisted_commutator(dirac(N), CrossedProductElement::monomial(
                                                   group, f, GroupWord::identity()),
                                     N);
  const auto sym = represent(CrossedProductElement::monomial(
                                 group, Complex(0.0, -1.0) * f.derivative(),
                                 GroupWord::identity()),
                             N);
  CHECK((tw - sym).interior().operator_norm() < 1e-10);
}

TEST_CASE("heat semigroup: truncation guard and spectral limit") {
  const int N = 64;
  const auto d = dirac(N);
  CHECK_THROWS_AS(heat(d, 1e-9), TruncationError);
  const auto h = heat(d, 50.0);
  // long times project onto the zero mode
  CHECK(h.entry(0, 0) == Complex(1.0, 0.0));
  double off = 0.0;
  for (int k = -N; k <= N; ++k)
    if (k != 0) off = std::max(off, std::abs(h.entry(k, k)));
  CHECK(off < 1e-16);
}

TEST_CASE("summability exponents at moderate truncation") {
  const int N = 128;
  CHECK(summability_exponent(inverse_diagonal(abs_dirac(N))) == doctest::Approx(1.0).epsilon(0.05));
  TruncatedOperator eye(N, "I");
  eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
  CHECK(std::abs(summability_exponent(eye)) < 1e-12);

  TruncatedOperator tiny(3, "tiny");
  CHECK_THROWS_AS(summability_exponent(tiny), DegenerateSpectrumError);
}

TEST_CASE("operator norm agrees with the dense SVD") {
  const auto group = standard_group();
  const int N = 24;
  const auto op = represent(CrossedProductElement::monomial(
                                group, random_band_function(6, 13), GroupWord::generator(0)),
                            N);
  const double svd_norm = op.singular_values()(0);
  CHECK(op.operator_norm() == doctest::Approx(svd_norm).epsilon(1e-10));
}

TEST_CASE("diagonal-of-product helper") {
  const auto group = standard_group();
  const int N = 10;
  const auto a = represent(CrossedProductElement::monomial(
                               group, random_band_function(3, 17), GroupWord::generator(0)),
                           N);
  const auto b = represent(CrossedProductElement::monomial(
                               group, random_band_function(3, 19), GroupWord::generator(0, -1)),
                           N);
  const Eigen::VectorXcd d = diagonal_of_product(a, b);
  const Eigen::MatrixXcd full = a.matrix() * b.matrix();
  for (Eigen::Index i = 0; i < d.size(); ++i) CHECK(std::abs(d(i) - full(i, i)) < 1e-12);
}

TEST_CASE("binary dump round trip") {
  const auto group = standard_group();
  const auto op = represent(CrossedProductElement::monomial(
                                group, random_band_function(3, 23), GroupWord::generator(0)),
                            8);
  const std::string base = "/tmp/sst_test_operator";
  save_operator(op, base);
  const auto back = load_operator(base);
  CHECK(back.truncation() == op.truncation());
  CHECK(back.label() == op.label());
  CHECK((back.matrix() - op.matrix()).norm() == 0.0);
  std::remove((base + ".bin").c_str());
  std::remove((base + ".json").c_str());
}

TEST_CASE("represent flags aliasing when the leakage bound is strict") {
  const auto group = standard_group(0.5, 0.25);
  RepresentOptions opt;
  opt.grid = 64;           // far too small for N = 24 under phi_0.5
  opt.leakage_bound = 1e-12;
  CHECK_THROWS_AS(represent(CrossedProductElement::monomial(
                                group, PeriodicFunction::constant(1.0), GroupWord::generator(0)),
                            24, opt),
                  AliasingError);
}
