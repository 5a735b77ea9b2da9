#include "sst/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

PeriodicFunction symmetrized(const PeriodicFunction& p) {
  // force exact Hermitian symmetry of the coefficients
  std::vector<Complex> c(2 * static_cast<std::size_t>(p.band()) + 1);
  for (int k = -p.band(); k <= p.band(); ++k) {
    const Complex avg = 0.5 * (p.coefficient(k) + std::conj(p.coefficient(-k)));
    c[static_cast<std::size_t>(k + p.band())] = avg;
  }
  return PeriodicFunction::from_coefficients(std::move(c));
}
}  // namespace

CircleDiffeo::CircleDiffeo() : p_(PeriodicFunction::zero(0)) { finalize(); }

CircleDiffeo CircleDiffeo::identity() { return CircleDiffeo(); }

CircleDiffeo CircleDiffeo::rotation(double alpha) {
  CircleDiffeo d;
  d.p_ = PeriodicFunction::constant(alpha);
  d.finalize();
  return d;
}

CircleDiffeo CircleDiffeo::sine_family(double epsilon) {
  if (std::abs(epsilon) >= 1.0)
    throw NonMonotoneError("sine_family: |epsilon| must be < 1");
  CircleDiffeo d;
  d.p_ = PeriodicFunction::sine(1, epsilon / kTwoPi);
  d.finalize();
  return d;
}

CircleDiffeo CircleDiffeo::from_displacement(const PeriodicFunction& p) {
  if (!p.is_real(1e-10))
    throw Error("from_displacement: displacement must be real");
  CircleDiffeo d;
  d.p_ = p;
  d.finalize();
  return d;
}

void CircleDiffeo::finalize() {
  p_ = symmetrized(p_);
  dphi_ = PeriodicFunction::constant(1.0) + p_.derivative();
  const std::size_t g = std::max<std::size_t>(grid_size_for(p_.band()), 512);
  auto d = dphi_.sample_real(g);
  min_derivative_ = *std::min_element(d.begin(), d.end());
  if (min_derivative_ <= 0.0)
    throw NonMonotoneError("diffeomorphism is not orientation preserving (phi' <= 0)");
}

double CircleDiffeo::eval(double x) const { return mod1(lift(x)); }

double CircleDiffeo::derivative(double x) const { return dphi_.eval(x).real(); }

bool CircleDiffeo::approx_equal(const CircleDiffeo& other, double tol) const {
  const std::size_t g = std::max(grid_size_for(std::max(p_.band(), other.p_.band())),
                                 static_cast<std::size_t>(512));
  auto a = p_.sample(g);
  auto b = other.p_.sample(g);
  for (std::size_t j = 0; j < g; ++j) {
    double diff = std::abs(a[j].real() - b[j].real());
    // displacements may legitimately differ by an integer
    diff = std::min(diff, std::abs(diff - std::round(diff)));
    if (diff > tol) return false;
  }
  return true;
}

CircleDiffeo CircleDiffeo::inverse(const InversionOptions& opt) const {
  int band = std::max(opt.initial_band, 2 * p_.band() + 8);
  // bounds of the displacement, for bisection brackets
  const double psup = p_.sup_norm();

  while (true) {
    const std::size_t g = grid_size_for(band);
    std::vector<Complex> q(g);
    bool newton_ok = true;
    for (std::size_t j = 0; j < g; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(g);
      // solve lift(y) = x for y in [x - psup, x + psup]
      double lo = x - psup - 1e-9, hi = x + psup + 1e-9;
      for (int it = 0; it < 12; ++it) {  // bisection seeding
        const double mid = 0.5 * (lo + hi);
        (lift(mid) < x ? lo : hi) = mid;
      }
      double y = 0.5 * (lo + hi);
      bool converged = false;
      for (int it = 0; it < opt.max_newton_iter; ++it) {
        const double r = lift(y) - x;
        if (std::abs(r) < 1e-15) {
          converged = true;
          break;
        }
        y -= r / derivative(y);
      }
      if (!converged && std::abs(lift(y) - x) > 1e-13) newton_ok = false;
      q[j] = Complex(y - x, 0.0);
    }
    if (!newton_ok)
      throw ConvergenceError("inverse: Newton iteration failed to converge");

    auto proj = project_samples(q, band);
    CircleDiffeo psi;
    psi.p_ = proj.fn;
    psi.finalize();
    if (composition_defect(psi) < opt.tolerance) return psi;
    if (band >= opt.max_band)
      throw ConvergenceError("inverse: band-limited fit cannot reach tolerance");
    band *= 2;
  }
}

double CircleDiffeo::composition_defect(const CircleDiffeo& psi, std::size_t grid) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    double d = lift(psi.lift(x)) - x;
    d -= std::round(d);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

std::vector<FixedPoint> CircleDiffeo::fixed_points(std::size_t scan_grid,
                                                   double nondegeneracy_tol) const {
  std::vector<FixedPoint> out;
  // constant displacement: a rotation, which is either the identity (every
  // point fixed, none isolated) or fixed-point free
  if (p_.band() == 0 || (p_ - PeriodicFunction::constant(p_.coefficient(0))).is_zero(1e-14))
    return out;
  auto pv = p_.sample_real(scan_grid);
  const double pmin = *std::min_element(pv.begin(), pv.end());
  const double pmax = *std::max_element(pv.begin(), pv.end());
  const double h = 1.0 / static_cast<double>(scan_grid);

  for (int m = static_cast<int>(std::ceil(pmin - 1e-12));
       m <= static_cast<int>(std::floor(pmax + 1e-12)); ++m) {
    for (std::size_t j = 0; j < scan_grid; ++j) {
      const double a = pv[j] - m;
      const double b = pv[(j + 1) % scan_grid] - m;
      const bool crossing = (a == 0.0) || (a * b < 0.0);
      if (!crossing) continue;
      // refine p(x) = m by Newton from the midpoint
      double x = (static_cast<double>(j) + 0.5) * h;
      for (int it = 0; it < 60; ++it) {
        const double r = p_.eval(x).real() - m;
        const double dp = p_.derivative().eval(x).real();
        if (std::abs(dp) < 1e-14) break;
        x -= r / dp;
        if (std::abs(r) < 1e-15) break;
      }
      if (std::abs(p_.eval(x).real() - m) > 1e-11) continue;
      x = mod1(x);
      bool duplicate = false;
      for (const auto& fp : out) {
        double d = std::abs(fp.x - x);
        d = std::min(d, 1.0 - d);
        if (d < 10.0 * h) duplicate = true;
      }
      if (duplicate) continue;
      FixedPoint fp;
      fp.x = x;
      fp.derivative = derivative(x);
      fp.nondegenerate = std::abs(fp.derivative - 1.0) > nondegeneracy_tol;
      out.push_back(fp);
    }
  }
  std::sort(out.begin(), out.end(), [](const FixedPoint& a, const FixedPoint& b) {
    return a.x < b.x;
  });
  return out;
}

SampledProjection compose(const PeriodicFunction& f, const CircleDiffeo& phi,
                          const CompositionOptions& opt) {
  int band_out = opt.band_out;
  if (band_out < 0) {
    // mode k of f picks up a phase 2 pi k p(x); the constant part of p is a
    // pure rotation (no spread), the oscillating part spreads mode k over
    // roughly k * 2 pi sup|p - mean p| neighbours (Bessel tails beyond that)
    PeriodicFunction osc = phi.displacement();
    osc -= PeriodicFunction::constant(osc.coefficient(0));
    const double spread = kTwoPi * osc.sup_norm() * std::max(f.band(), 1);
    band_out = f.band() + static_cast<int>(std::ceil(spread)) +
               static_cast<int>(std::ceil(4.0 * std::cbrt(std::max(spread, 1.0)))) + 12;
    band_out = std::min(band_out, 512);
  }
  const std::size_t g =
      std::max(grid_size_for(band_out), grid_size_for(f.band() + phi.displacement().band()));
  std::vector<Complex> vals(g);
  for (std::size_t j = 0; j < g; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(g);
    vals[j] = f.eval(phi.lift(x));
  }
  auto proj = project_samples(vals, band_out);
  if (proj.tail_ratio > opt.tail_bound)
    throw AliasingError("compose: tail-energy ratio " + std::to_string(proj.tail_ratio) +
                        " exceeds bound " + std::to_string(opt.tail_bound));
  return proj;
}

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi,
                     const CompositionOptions& opt) {
  // (phi o psi)(x) = psi(x) + p_phi(psi(x)): displacement p_psi + p_phi o psi
  CompositionOptions inner = opt;
  if (inner.band_out < 0)
    inner.band_out = std::min(
        std::max(32, 2 * (phi.displacement().band() + psi.displacement().band()) + 8), 512);
  auto moved = compose(phi.displacement(), psi, inner);
  return CircleDiffeo::from_displacement(psi.displacement() + moved.fn);
}

namespace {
SampledProjection pointwise_power(const CircleDiffeo& phi, Complex w, bool take_log,
                                  const CompositionOptions& opt) {
  int band_out = opt.band_out;
  if (band_out < 0) band_out = std::min(std::max(32, 8 * (phi.derivative_function().band() + 1)), 512);
  const std::size_t g = grid_size_for(band_out);
  std::vector<Complex> vals(g);
  for (std::size_t j = 0; j < g; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(g);
    const double d = phi.derivative(x);
    if (d <= 0.0) throw NonMonotoneError("derivative_power: phi' <= 0 on the grid");
    const double ld = std::log(d);
    vals[j] = take_log ? Complex(ld, 0.0) : std::exp(w * ld);
  }
  auto proj = project_samples(vals, band_out);
  if (proj.tail_ratio > opt.tail_bound)
    throw AliasingError("derivative_power: tail-energy ratio exceeds bound");
  return proj;
}
}  // namespace

SampledProjection derivative_power(const CircleDiffeo& phi, Complex w,
                                   const CompositionOptions& opt) {
  return pointwise_power(phi, w, /*take_log=*/false, opt);
}

SampledProjection log_derivative(const CircleDiffeo& phi, const CompositionOptions& opt) {
  return pointwise_power(phi, Complex(0.0), /*take_log=*/true, opt);
}

}  // namespace sst
