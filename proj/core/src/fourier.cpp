#include "sst/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

namespace fft {

void transform(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!is_pow2(n)) throw Error("fft: size must be a power of two");

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace fft

std::size_t grid_size_for(int band) {
  std::size_t need = 4 * (static_cast<std::size_t>(std::max(band, 0)) + 1);
  std::size_t g = 1;
  while (g < need) g <<= 1;
  return g;
}

PeriodicFunction::PeriodicFunction() : band_(0), coeffs_(1, Complex(0.0)) {}

PeriodicFunction PeriodicFunction::zero(int band) {
  PeriodicFunction f;
  f.band_ = std::max(band, 0);
  f.coeffs_.assign(2 * static_cast<std::size_t>(f.band_) + 1, Complex(0.0));
  return f;
}

PeriodicFunction PeriodicFunction::constant(Complex value) {
  PeriodicFunction f;
  f.coeffs_[0] = value;
  return f;
}

PeriodicFunction PeriodicFunction::from_coefficients(std::vector<Complex> coeffs) {
  if (coeffs.empty() || coeffs.size() % 2 == 0)
    throw Error("from_coefficients: need an odd number of coefficients");
  PeriodicFunction f;
  f.band_ = static_cast<int>(coeffs.size() / 2);
  f.coeffs_ = std::move(coeffs);
  return f;
}

PeriodicFunction PeriodicFunction::harmonic(int k, Complex amplitude) {
  PeriodicFunction f = zero(std::abs(k));
  f.coeffs_[static_cast<std::size_t>(k + f.band_)] = amplitude;
  return f;
}

PeriodicFunction PeriodicFunction::cosine(int k, double amplitude) {
  PeriodicFunction f = zero(std::abs(k));
  f.coeffs_[static_cast<std::size_t>(f.band_ + k)] += 0.5 * amplitude;
  f.coeffs_[static_cast<std::size_t>(f.band_ - k)] += 0.5 * amplitude;
  return f;
}

PeriodicFunction PeriodicFunction::sine(int k, double amplitude) {
  PeriodicFunction f = zero(std::abs(k));
  const Complex half(0.0, -0.5 * amplitude);
  f.coeffs_[static_cast<std::size_t>(f.band_ + k)] += half;
  f.coeffs_[static_cast<std::size_t>(f.band_ - k)] -= half;
  return f;
}

Complex PeriodicFunction::coefficient(int k) const {
  if (std::abs(k) > band_) return Complex(0.0);
  return coeffs_[static_cast<std::size_t>(k + band_)];
}

bool PeriodicFunction::is_real(double tol) const {
  for (int k = 0; k <= band_; ++k) {
    if (std::abs(coefficient(-k) - std::conj(coefficient(k))) >= tol) return false;
  }
  return true;
}

Complex PeriodicFunction::eval(double x) const {
  // Horner in z = e^{2 pi i x}: sum_{k=-B}^{B} c_k z^k = z^{-B} * P(z)
  const Complex z = std::polar(1.0, kTwoPi * x);
  Complex acc(0.0);
  for (int i = 2 * band_; i >= 0; --i) {
    acc = acc * z + coeffs_[static_cast<std::size_t>(i)];
  }
  return acc * std::polar(1.0, -kTwoPi * band_ * x);
}

std::vector<Complex> PeriodicFunction::sample(std::size_t grid_size) const {
  if (!is_pow2(grid_size) || grid_size < 2 * static_cast<std::size_t>(band_) + 1)
    throw Error("sample: grid must be a power of two covering the band");
  std::vector<Complex> bins(grid_size, Complex(0.0));
  const std::size_t g = grid_size;
  for (int k = -band_; k <= band_; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k % static_cast<int>(g) + static_cast<int>(g))) % g;
    bins[bin] += coefficient(k);
  }
  fft::transform(bins, /*inverse=*/true);  // values f(j/G)
  return bins;
}

std::vector<double> PeriodicFunction::sample_real(std::size_t grid_size) const {
  auto v = sample(grid_size);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

PeriodicFunction PeriodicFunction::derivative() const {
  PeriodicFunction d = *this;
  for (int k = -band_; k <= band_; ++k) {
    d.coeffs_[static_cast<std::size_t>(k + band_)] *= Complex(0.0, kTwoPi * k);
  }
  return d;
}

PeriodicFunction PeriodicFunction::conjugate() const {
  PeriodicFunction c = zero(band_);
  for (int k = -band_; k <= band_; ++k) {
    c.coeffs_[static_cast<std::size_t>(k + band_)] = std::conj(coefficient(-k));
  }
  return c;
}

PeriodicFunction PeriodicFunction::truncated(int band_out) const {
  PeriodicFunction t = zero(band_out);
  const int b = std::min(band_, band_out);
  for (int k = -b; k <= b; ++k) {
    t.coeffs_[static_cast<std::size_t>(k + band_out)] = coefficient(k);
  }
  return t;
}

double PeriodicFunction::sup_norm(std::size_t grid_size) const {
  if (grid_size == 0) grid_size = std::max<std::size_t>(grid_size_for(band_), 512);
  auto v = sample(grid_size);
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double PeriodicFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

bool PeriodicFunction::is_zero(double tol) const {
  for (const auto& c : coeffs_)
    if (std::abs(c) > tol) return false;
  return true;
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& rhs) {
  if (rhs.band_ > band_) *this = truncated(rhs.band_);
  for (int k = -rhs.band_; k <= rhs.band_; ++k) {
    coeffs_[static_cast<std::size_t>(k + band_)] += rhs.coefficient(k);
  }
  return *this;
}

PeriodicFunction& PeriodicFunction::operator-=(const PeriodicFunction& rhs) {
  if (rhs.band_ > band_) *this = truncated(rhs.band_);
  for (int k = -rhs.band_; k <= rhs.band_; ++k) {
    coeffs_[static_cast<std::size_t>(k + band_)] -= rhs.coefficient(k);
  }
  return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(Complex scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

PeriodicFunction operator*(const PeriodicFunction& a, const PeriodicFunction& b) {
  PeriodicFunction p = PeriodicFunction::zero(a.band() + b.band());
  // direct convolution; bands are small enough that this beats transform setup
  for (int k = -a.band(); k <= a.band(); ++k) {
    const Complex ca = a.coefficient(k);
    if (ca == Complex(0.0)) continue;
    for (int m = -b.band(); m <= b.band(); ++m) {
      p.coeffs_[static_cast<std::size_t>(k + m + p.band_)] += ca * b.coefficient(m);
    }
  }
  return p;
}

SampledProjection project_samples(std::span<const Complex> values, int band_out) {
  const std::size_t g = values.size();
  if (!is_pow2(g)) throw Error("project_samples: grid must be a power of two");
  if (g < 2 * static_cast<std::size_t>(band_out) + 1)
    throw AliasingError("project_samples: grid too small for requested band");
  std::vector<Complex> hat(values.begin(), values.end());
  fft::transform(hat, /*inverse=*/false);
  const double scale = 1.0 / static_cast<double>(g);

  SampledProjection out;
  out.fn = PeriodicFunction::zero(band_out);
  std::vector<Complex> kept(2 * static_cast<std::size_t>(band_out) + 1);
  double total = 0.0, retained = 0.0;
  for (std::size_t j = 0; j < g; ++j) total += std::norm(hat[j] * scale);
  for (int k = -band_out; k <= band_out; ++k) {
    const std::size_t bin =
        static_cast<std::size_t>((k % static_cast<int>(g) + static_cast<int>(g))) % g;
    const Complex c = hat[bin] * scale;
    kept[static_cast<std::size_t>(k + band_out)] = c;
    retained += std::norm(c);
  }
  out.fn = PeriodicFunction::from_coefficients(std::move(kept));
  out.tail_ratio = total > 0.0 ? std::max(0.0, (total - retained) / total) : 0.0;
  return out;
}

Complex parseval_pairing(const PeriodicFunction& f, const PeriodicFunction& g) {
  Complex s(0.0);
  const int b = std::min(f.band(), g.band());
  for (int k = -b; k <= b; ++k) s += f.coefficient(k) * g.coefficient(-k);
  return s;
}

}  // namespace sst
