#pragma once

// Orientation preserving diffeomorphisms of R/Z, stored through a degree-1
// lift phi(x) = x + p(x) with a real band-limited displacement p.  Keeping
// the displacement (never raw samples) means compositions and inverses stay
// inside the band-limited smooth category.

#include <optional>
#include <vector>

#include "sst/fourier.hpp"

namespace sst {

struct FixedPoint {
  double x = 0.0;
  double derivative = 1.0;  // phi'(x)
  bool nondegenerate = false;
};

struct InversionOptions {
  double tolerance = 1e-12;   // max |phi(psi(x)) - x| on the validation grid
  int max_newton_iter = 80;
  int initial_band = 32;      // grown adaptively up to max_band
  int max_band = 512;
};

struct CompositionOptions {
  int band_out = -1;          // -1: automatic (sum of bands plus margin)
  double tail_bound = 1e-8;   // AliasingError beyond this tail-energy ratio
};

class CircleDiffeo {
 public:
  CircleDiffeo();  // identity

  static CircleDiffeo identity();
  static CircleDiffeo rotation(double alpha);
  // The built-in family phi_eps: p(x) = (eps / 2 pi) sin(2 pi x), |eps| < 1.
  static CircleDiffeo sine_family(double epsilon);
  static CircleDiffeo from_displacement(const PeriodicFunction& p);

  const PeriodicFunction& displacement() const { return p_; }
  // cached derivative phi' = 1 + p'
  const PeriodicFunction& derivative_function() const { return dphi_; }

  double lift(double x) const { return x + p_.eval(x).real(); }
  double eval(double x) const;        // lift reduced mod 1 to [0,1)
  double derivative(double x) const;  // phi'(x) > 0

  double min_derivative() const { return min_derivative_; }
  bool is_identity(double tol = 1e-12) const { return p_.is_zero(tol); }
  bool approx_equal(const CircleDiffeo& other, double tol) const;

  CircleDiffeo inverse(const InversionOptions& opt = {}) const;
  std::vector<FixedPoint> fixed_points(std::size_t scan_grid = 4096,
                                       double nondegeneracy_tol = 1e-8) const;

  // Largest pointwise defect of phi(psi(x)) - x over a grid.
  double composition_defect(const CircleDiffeo& psi, std::size_t grid = 2048) const;

 private:
  PeriodicFunction p_;     // real displacement
  PeriodicFunction dphi_;  // 1 + p'
  double min_derivative_ = 1.0;

  void finalize();  // symmetrize, cache, check monotonicity
};

// f o phi projected onto band_out modes, tail-energy reported.
SampledProjection compose(const PeriodicFunction& f, const CircleDiffeo& phi,
                          const CompositionOptions& opt = {});

// phi o psi as a diffeomorphism (displacement re-projected).
CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi,
                     const CompositionOptions& opt = {});

// phi'(x)^w as a band-limited function; the exponent may be complex
// (w = it gives the modular family, w = iz its analytic continuation).
// phi' > 0, so the principal branch of log phi' is used throughout.
SampledProjection derivative_power(const CircleDiffeo& phi, Complex w,
                                   const CompositionOptions& opt = {});
// log phi' (principal branch)
SampledProjection log_derivative(const CircleDiffeo& phi,
                                 const CompositionOptions& opt = {});

}  // namespace sst
