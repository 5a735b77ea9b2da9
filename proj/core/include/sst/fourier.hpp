#pragma once

// Band-limited functions on the circle R/Z, stored as Fourier coefficients
// c_k for |k| <= band, so that f(x) = sum_k c_k e^{2 pi i k x}.  All grid
// work happens on power-of-two grids of at least 4*(band+1) points, which
// keeps transforms exact for band-limited data.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sst/errors.hpp"

namespace sst {

using Complex = std::complex<double>;

namespace fft {

// In-place radix-2 transform; size must be a power of two.
// forward: a_j -> sum_m a_m e^{-2 pi i j m / n}  (no normalization).
void transform(std::vector<Complex>& a, bool inverse);

}  // namespace fft

// Smallest power of two >= 4*(band+1); the common grid size policy.
std::size_t grid_size_for(int band);

class PeriodicFunction {
 public:
  PeriodicFunction();  // identically zero, band 0

  static PeriodicFunction zero(int band);
  static PeriodicFunction constant(Complex value);
  // coeffs[k + band] is the coefficient of e^{2 pi i k x}
  static PeriodicFunction from_coefficients(std::vector<Complex> coeffs);
  static PeriodicFunction harmonic(int k, Complex amplitude = 1.0);
  static PeriodicFunction cosine(int k, double amplitude = 1.0);
  static PeriodicFunction sine(int k, double amplitude = 1.0);

  int band() const { return band_; }
  Complex coefficient(int k) const;
  const std::vector<Complex>& coefficients() const { return coeffs_; }

  // real_flag: max_k |c_{-k} - conj(c_k)| below tolerance
  bool is_real(double tol = 1e-13) const;

  Complex eval(double x) const;
  std::vector<Complex> sample(std::size_t grid_size) const;  // power of two
  std::vector<double> sample_real(std::size_t grid_size) const;

  PeriodicFunction derivative() const;  // c_k -> 2 pi i k c_k
  PeriodicFunction conjugate() const;
  PeriodicFunction truncated(int band_out) const;

  Complex integral() const { return coefficient(0); }  // exact quadrature

  double sup_norm(std::size_t grid_size = 0) const;
  double l2_norm() const;
  bool is_zero(double tol = 0.0) const;

  PeriodicFunction& operator+=(const PeriodicFunction& rhs);
  PeriodicFunction& operator-=(const PeriodicFunction& rhs);
  PeriodicFunction& operator*=(Complex scalar);

  friend PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) {
    a += b;
    return a;
  }
  friend PeriodicFunction operator-(PeriodicFunction a, const PeriodicFunction& b) {
    a -= b;
    return a;
  }
  friend PeriodicFunction operator*(Complex s, PeriodicFunction f) {
    f *= s;
    return f;
  }
  // Exact product: output band is the sum of the operand bands.
  friend PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b);

 private:
  int band_ = 0;
  std::vector<Complex> coeffs_;  // size 2*band+1
};

// Projection of grid samples onto modes |k| <= band_out.  tail_ratio is the
// energy fraction carried by the discarded modes band_out < |k| <= G/2.
struct SampledProjection {
  PeriodicFunction fn;
  double tail_ratio = 0.0;
};

SampledProjection project_samples(std::span<const Complex> values, int band_out);

// Parseval pairing sum_k c_k(f) c_{-k}(g); equals integral(f*g) exactly.
Complex parseval_pairing(const PeriodicFunction& f, const PeriodicFunction& g);

}  // namespace sst
