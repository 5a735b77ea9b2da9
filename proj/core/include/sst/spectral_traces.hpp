#pragma once

// Regularized trace functionals extracted from heat-trace curves.
//
// The residue functional is Res_{s=0} Tr(V_chi^{-1} P |D|^{-s}) evaluated
// against the integer-normalized spectrum |D| ~ diag(|k|).  With that
// normalization the multiplication operator by f against |D|^{-1} has
// residue 2 * integral(f) (two cosphere points), which is the convention the
// closed-form circle cocycles use.  Via the Mellin transform
//   Tr(X |D|^{-s-1}) = 1/Gamma((s+1)/2) Int_0^inf u^{(s-1)/2} Tr(X e^{-u D^2}) du
// the residue at s = 0 comes only from the u^{-1/2} term of the small-u
// expansion of the heat curve, so value = (2/sqrt(pi)) * a_{-1/2} with
// a_{-1/2} fitted over half-integer powers on a window of small u.
//
// The window must stay below the fixed-point localization scale of chi
// (roughly pi^2 * sup|chi - id|^2); beyond it the kernel width exceeds the
// displacement and the curve reverts to u^{-1/2} growth, which would fake a
// residue.  Defaults encode that.

#include <span>

#include "sst/operators.hpp"

namespace sst {

struct HeatFitConfig {
  double u_min = 0.0;  // heat times for the integer-normalized Dirac
  double u_max = 0.0;
  int count = 24;
  std::vector<double> basis_powers = {-0.5, 0.0, 0.5, 1.0, 1.5};
  double condition_bound = 1e16;        // IllConditionedFit beyond this
  double soft_residual_bound = 1e-3;    // result flagged unreliable beyond this
  double hard_residual_bound = 0.2;     // UnreliableResidue beyond this

  // u_min = 37/N^2 (so e^{-u_min N^2} < 1e-16), u_max = max(5e-4, 4.2 u_min).
  static HeatFitConfig defaults_for(int truncation);

  std::vector<double> grid() const;  // logarithmic, strictly increasing
  void validate(int truncation) const;
};

struct ResidueResult {
  Complex value{0.0, 0.0};
  double fit_residual = 0.0;  // max weighted model deviation / max weighted data
  double condition = 0.0;
  bool reliable = true;
  std::vector<std::pair<double, Complex>> coefficients;  // (power, fitted a_power)
};

// Tr(prefactor e^{-t D^2}) at the given times; D diagonal, exact finite sums.
std::vector<Complex> heat_trace_curve(const TruncatedOperator& prefactor,
                                      const TruncatedOperator& D, std::span<const double> times);

// Fit sum_p a_p u^{p} over cfg.basis_powers to a sampled curve.
ResidueResult fit_half_integer_curve(std::span<const double> u, std::span<const Complex> curve,
                                     const HeatFitConfig& cfg);

// Residue from a curve diagonal: d_k are the diagonal entries of
// V_chi^{-1} (operator part) in the mode basis, k = index - N.
// zero_eigenvalue patches the k = 0 heat weight e^{-u z^2}; the default keeps
// the true zero eigenvalue, and the residue is insensitive to the choice
// (finite-rank perturbations only move regular terms of the expansion).
ResidueResult residue_from_diagonal(const Eigen::VectorXcd& diag, int truncation,
                                    const HeatFitConfig& cfg, double zero_eigenvalue = 0.0);

// Res_{s=0} Tr(V_chi^{-1} A |D|^{-s-1}): A is the operator part with no
// inverse power attached.
ResidueResult residue_of_part(const TruncatedOperator& A, const CircleDiffeo& chi,
                              const HeatFitConfig& cfg);

// Spec form: the caller supplies P = A |D|^{-1} (integer-normalized, patched
// zero mode) so the Mellin weight matches the (s+1)/2 convention.
ResidueResult residue_functional(const TruncatedOperator& P_prefactor, const CircleDiffeo& chi,
                                 const HeatFitConfig& cfg, double zero_mode_patch = 1.0);

// Residue surrogate for the Dixmier-trace pairing Tr_omega(T pi(a) |D|^{-1})
// (use_phase = true inserts the Dirac phase, giving the signed D^{-1} form).
Complex dixmier_surrogate(const TruncatedOperator& T, const CrossedProductElement& a,
                          const HeatFitConfig& cfg, bool use_phase = false);

// Wodzicki closed form for pi(f) |D|^{-1}: the order -1 symbol summed over
// the two cosphere points and integrated, i.e. 2 * integral(f).
Complex wodzicki_closed_form(const PeriodicFunction& f_symbol);

}  // namespace sst
