#include "sst/spectral_traces.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace sst {

HeatFitConfig HeatFitConfig::defaults_for(int truncation) {
  HeatFitConfig cfg;
  const double n2 = static_cast<double>(truncation) * static_cast<double>(truncation);
  cfg.u_min = 37.0 / n2;
  cfg.u_max = std::max(5e-4, 4.2 * cfg.u_min);
  return cfg;
}

std::vector<double> HeatFitConfig::grid() const {
  if (!(u_min > 0.0) || !(u_max > u_min)) throw ConfigError("HeatFitConfig: bad window");
  if (count < static_cast<int>(basis_powers.size()) + 2)
    throw ConfigError("HeatFitConfig: too few grid points for the basis");
  std::vector<double> u(static_cast<std::size_t>(count));
  const double l0 = std::log(u_min), l1 = std::log(u_max);
  for (int i = 0; i < count; ++i)
    u[static_cast<std::size_t>(i)] =
        std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(count - 1));
  return u;
}

void HeatFitConfig::validate(int truncation) const {
  grid();  // monotone, well formed
  const double n2 = static_cast<double>(truncation) * static_cast<double>(truncation);
  if (std::exp(-u_min * n2) > 1e-16)
    throw ConfigError("HeatFitConfig: u_min too small for this truncation");
}

std::vector<Complex> heat_trace_curve(const TruncatedOperator& prefactor,
                                      const TruncatedOperator& D,
                                      std::span<const double> times) {
  if (!D.is_diagonal(0.0)) throw Error("heat_trace_curve: D must be diagonal");
  if (prefactor.truncation() != D.truncation())
    throw Error("heat_trace_curve: truncation mismatch");
  const int N = D.truncation();
  double lam_max = 0.0;
  for (int k = -N; k <= N; ++k) lam_max = std::max(lam_max, std::abs(D.entry(k, k)));
  std::vector<Complex> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t <= 0.0 || std::exp(-t * lam_max * lam_max) > 1e-16)
      throw TruncationError("heat_trace_curve: t too small for this truncation");
    Complex s(0.0);
    for (int k = -N; k <= N; ++k) {
      const double lam = D.entry(k, k).real();
      s += prefactor.entry(k, k) * std::exp(-t * lam * lam);
    }
    out.push_back(s);
  }
  return out;
}

ResidueResult fit_half_integer_curve(std::span<const double> u, std::span<const Complex> curve,
                                     const HeatFitConfig& cfg) {
  const auto rows = static_cast<Eigen::Index>(u.size());
  const auto cols = static_cast<Eigen::Index>(cfg.basis_powers.size());
  if (rows < cols + 2) throw ConfigError("fit_half_integer_curve: underdetermined fit");

  // Row i is weighted by u_i^{1/2}, so the u^{-1/2} column becomes constant
  // and the remaining columns stay within [0,1]-ish magnitudes.
  Eigen::MatrixXd V(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double ui = u[static_cast<std::size_t>(i)];
    const double w = std::sqrt(ui);
    for (Eigen::Index j = 0; j < cols; ++j)
      V(i, j) = std::pow(ui, cfg.basis_powers[static_cast<std::size_t>(j)] + 0.5);
    rhs(i) = w * curve[static_cast<std::size_t>(i)];
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  ResidueResult res;
  res.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / (sv(sv.size() - 1)) : 1e300;
  if (res.condition > cfg.condition_bound)
    throw IllConditionedFit("fit_half_integer_curve: condition " +
                            std::to_string(res.condition) + " exceeds bound");

  const Eigen::VectorXd rhs_re = rhs.real();
  const Eigen::VectorXd rhs_im = rhs.imag();
  const Eigen::VectorXd coef_re = svd.solve(rhs_re);
  const Eigen::VectorXd coef_im = svd.solve(rhs_im);
  Eigen::VectorXcd coef(cols);
  for (Eigen::Index j = 0; j < cols; ++j) coef(j) = Complex(coef_re(j), coef_im(j));

  const Eigen::VectorXcd model = V.cast<Complex>() * coef;
  double max_dev = 0.0, max_rhs = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    max_dev = std::max(max_dev, std::abs(model(i) - rhs(i)));
    max_rhs = std::max(max_rhs, std::abs(rhs(i)));
  }
  res.fit_residual = max_rhs > 0.0 ? max_dev / max_rhs : 0.0;
  if (res.fit_residual > cfg.hard_residual_bound)
    throw UnreliableResidue("fit_half_integer_curve: residual " +
                            std::to_string(res.fit_residual) + " too large");
  res.reliable = res.fit_residual <= cfg.soft_residual_bound;

  Complex a_half(0.0);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double p = cfg.basis_powers[static_cast<std::size_t>(j)];
    res.coefficients.emplace_back(p, coef(j));
    if (std::abs(p + 0.5) < 1e-12) a_half = coef(j);
  }
  res.value = 2.0 / std::sqrt(std::numbers::pi) * a_half;
  return res;
}

ResidueResult residue_from_diagonal(const Eigen::VectorXcd& diag, int truncation,
                                    const HeatFitConfig& cfg, double zero_eigenvalue) {
  cfg.validate(truncation);
  const auto u = cfg.grid();
  std::vector<Complex> curve(u.size(), Complex(0.0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    Complex s(0.0);
    for (int k = -truncation; k <= truncation; ++k) {
      const double lam = k == 0 ? zero_eigenvalue : static_cast<double>(k);
      s += diag(k + truncation) * std::exp(-u[i] * lam * lam);
    }
    curve[i] = s;
  }
  return fit_half_integer_curve(u, curve, cfg);
}

ResidueResult residue_of_part(const TruncatedOperator& A, const CircleDiffeo& chi,
                              const HeatFitConfig& cfg) {
  const int N = A.truncation();
  if (chi.is_identity(1e-14)) return residue_from_diagonal(A.matrix().diagonal(), N, cfg);
  const TruncatedOperator C = composition_operator(chi, N);
  return residue_from_diagonal(diagonal_of_product(C, A), N, cfg);
}

ResidueResult residue_functional(const TruncatedOperator& P_prefactor, const CircleDiffeo& chi,
                                 const HeatFitConfig& cfg, double zero_mode_patch) {
  // strip the |D|^{-1} the caller attached
  const TruncatedOperator A =
      P_prefactor * abs_dirac_integer(P_prefactor.truncation(), zero_mode_patch);
  return residue_of_part(A, chi, cfg);
}

Complex dixmier_surrogate(const TruncatedOperator& T, const CrossedProductElement& a,
                          const HeatFitConfig& cfg, bool use_phase) {
  const int N = T.truncation();
  const TruncatedOperator pa = represent(a, N);
  Eigen::VectorXcd d = diagonal_of_product(T, pa);
  if (use_phase) {
    for (int k = -N; k <= N; ++k) {
      if (k < 0) d(k + N) = -d(k + N);  // right-multiply by diag(sign k)
    }
  }
  return residue_from_diagonal(d, N, cfg).value;
}

Complex wodzicki_closed_form(const PeriodicFunction& f_symbol) {
  return 2.0 * f_symbol.integral();
}

}  // namespace sst
