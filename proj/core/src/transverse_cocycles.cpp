#include "sst/transverse_cocycles.hpp"

namespace sst {

namespace {

// integral( f * d(g o phi) ) for one word stratum
Complex stratum_tau(const PeriodicFunction& f, const PeriodicFunction& g,
                    const CircleDiffeo& phi, const CompositionOptions& opt) {
  const PeriodicFunction pulled = compose(g, phi, opt).fn;
  return (f * pulled.derivative()).integral();
}

Complex stratum_psi1(const PeriodicFunction& f, const PeriodicFunction& g,
                     const CircleDiffeo& phi, const CompositionOptions& opt) {
  const PeriodicFunction pulled = compose(g, phi, opt).fn;
  const PeriodicFunction dlog = log_derivative(phi, opt).fn.derivative();
  const Complex first = (f * pulled.derivative()).integral();
  const Complex second = (f * pulled * dlog).integral();
  return Complex(0.0, -2.0) * first + Complex(0.0, -1.0) * second;
}

CrossedProductElement make_element(const DiffeoGroupPtr& group, const Monomial& m) {
  return CrossedProductElement::monomial(group, m.coeff, m.word);
}

}  // namespace

Complex tau(const DiffeoGroupPtr& group, const CrossedProductElement& a,
            const CrossedProductElement& b, const CompositionOptions& opt) {
  Complex acc(0.0);
  for (const auto& [w, f] : a.terms()) {
    auto it = b.terms().find(w.inverse());
    if (it == b.terms().end()) continue;
    acc += stratum_tau(f, it->second, group->realize(w), opt);
  }
  return acc;
}

Complex tau(const DiffeoGroupPtr& group, const MonomialPair& pair,
            const CompositionOptions& opt) {
  return tau(group, make_element(group, pair.left), make_element(group, pair.right), opt);
}

Cochain<CrossedProductElement> tau_cochain(DiffeoGroupPtr group, const CompositionOptions& opt) {
  auto ops = crossed_product_ops(group, opt);
  return Cochain<CrossedProductElement>(
      1, ops, [group, opt](std::span<const CrossedProductElement> args) {
        return tau(group, args[0], args[1], opt);
      });
}

Derivation<CrossedProductElement> modular_derivation(const CompositionOptions& opt) {
  return [opt](const CrossedProductElement& a) { return delta(a, opt); };
}

Complex psi1_closed(const DiffeoGroupPtr& group, const CrossedProductElement& a,
                    const CrossedProductElement& b, const CompositionOptions& opt) {
  Complex acc(0.0);
  for (const auto& [w, f] : a.terms()) {
    auto it = b.terms().find(w.inverse());
    if (it == b.terms().end()) continue;
    acc += stratum_psi1(f, it->second, group->realize(w), opt);
  }
  return acc;
}

Complex psi1_closed(const DiffeoGroupPtr& group, const MonomialPair& pair,
                    const CompositionOptions& opt) {
  if (!pair.localized())
    throw LocalizationError("psi1_closed: pair words do not cancel");
  return stratum_psi1(pair.left.coeff, pair.right.coeff, group->realize(pair.left.word), opt);
}

Cochain<CrossedProductElement> psi1_closed_cochain(DiffeoGroupPtr group,
                                                   const CompositionOptions& opt) {
  auto ops = crossed_product_ops(group, opt);
  return Cochain<CrossedProductElement>(
      1, ops, [group, opt](std::span<const CrossedProductElement> args) {
        return psi1_closed(group, args[0], args[1], opt);
      });
}

ResidueResult psi1_spectral(const DiffeoGroupPtr& group, const MonomialPair& pair,
                            int truncation, const HeatFitConfig& cfg) {
  const int N = truncation;
  const CrossedProductElement a = make_element(group, pair.left);
  const CrossedProductElement b = make_element(group, pair.right);

  const Eigen::MatrixXcd Pf = represent(a, N).matrix();
  const Eigen::MatrixXcd Pg = represent(b, N).matrix();
  const Eigen::MatrixXcd Ps = represent(sigma(b, -1), N).matrix();
  const Eigen::VectorXcd d = dirac(N).matrix().diagonal();

  // X = D pi(sigma^{-1} b) - pi(b) D, with D diagonal
  const Eigen::MatrixXcd X = d.asDiagonal() * Ps - Pg * d.asDiagonal();

  // diagonal of Pf * X without forming the product
  Eigen::VectorXcd diag(2 * N + 1);
  for (Eigen::Index i = 0; i < diag.size(); ++i) diag(i) = Pf.row(i) * X.col(i);

  return residue_from_diagonal(diag, N, cfg);
}

ResidueResult psi_gauge_m(const DiffeoGroupPtr& group, const MonomialPair& pair, int m,
                          int truncation, const HeatFitConfig& cfg) {
  if (m == 0) return psi1_spectral(group, pair, truncation, cfg);
  const CompositionOptions opt;
  MonomialPair twisted = pair;
  if (!pair.left.word.is_identity()) {
    const auto weight = derivative_power(group->realize(pair.left.word),
                                         Complex(static_cast<double>(m), 0.0), opt);
    twisted.left.coeff = weight.fn * pair.left.coeff;
  }
  if (!pair.right.word.is_identity()) {
    const auto weight = derivative_power(group->realize(pair.right.word),
                                         Complex(static_cast<double>(m), 0.0), opt);
    twisted.right.coeff = weight.fn * pair.right.coeff;
  }
  return psi1_spectral(group, twisted, truncation, cfg);
}

Theorem12Report theorem12_check(const DiffeoGroupPtr& group, const MonomialPair& pair,
                                int truncation, const HeatFitConfig& cfg,
                                const CompositionOptions& opt) {
  Theorem12Report rep;
  rep.closed_value = psi1_closed(group, pair, opt);

  const auto tauc = tau_cochain(group, opt);
  const auto ldt = lie_derivative(tauc, modular_derivation(opt));
  const std::vector<CrossedProductElement> args{make_element(group, pair.left),
                                                make_element(group, pair.right)};
  rep.rhs_value = Complex(0.0, -2.0) * tauc(args) + ldt(args);

  const ResidueResult spec = psi1_spectral(group, pair, truncation, cfg);
  rep.spectral_value = spec.value;
  rep.fit_residual = spec.fit_residual;
  rep.closed_residual = std::abs(rep.closed_value - rep.rhs_value);
  rep.spectral_residual = std::abs(rep.spectral_value - rep.rhs_value);
  return rep;
}

}  // namespace sst
