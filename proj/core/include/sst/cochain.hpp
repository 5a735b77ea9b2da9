#pragma once

// Multilinear cochain algebra over a generic unital algebra: Hochschild
// coboundary b, the boundary B = A  B0, the cyclic permutation lambda, Lie
// derivatives along a derivation, and the two contractions appearing in the
// degree-1 Cartan homotopy identity  L_delta = B e_delta + b E_delta.
//
// Cochains are black-box multilinear evaluators, so the same operators serve
// both the crossed-product algebra and finite matrix algebras.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sst/errors.hpp"
#include "sst/fourier.hpp"  // Complex

namespace sst {

template <class A>
struct AlgebraOps {
  std::function<A(const A&, const A&)> multiply;
  std::function<A()> unit;  // may be null for non-unital use; B requires it
  std::function<A(const A&, const A&)> add;
  std::function<A(Complex, const A&)> scale;
  std::function<double(const A&)> norm;  // size probe for sanity checks
};

template <class A>
using AlgebraOpsPtr = std::shared_ptr<const AlgebraOps<A>>;

template <class A>
using Derivation = std::function<A(const A&)>;

template <class A>
class Cochain {
 public:
  using Evaluator = std::function<Complex(std::span<const A>)>;

  Cochain(int degree, AlgebraOpsPtr<A> ops, Evaluator eval)
      : degree_(degree), ops_(std::move(ops)), eval_(std::move(eval)) {
    if (degree_ < 0) throw DegreeMismatchError("Cochain: negative degree");
    if (!ops_) throw Error("Cochain: null algebra ops");
  }

  int degree() const { return degree_; }
  const AlgebraOpsPtr<A>& ops() const { return ops_; }

  Complex operator()(std::span<const A> args) const {
    if (static_cast<int>(args.size()) != degree_ + 1)
      throw DegreeMismatchError("Cochain: expected " + std::to_string(degree_ + 1) +
                                " arguments, got " + std::to_string(args.size()));
    return eval_(args);
  }
  Complex operator()(const std::vector<A>& args) const {
    return (*this)(std::span<const A>(args));
  }

  static Cochain zero(int degree, AlgebraOpsPtr<A> ops) {
    return Cochain(degree, std::move(ops), [](std::span<const A>) { return Complex(0.0); });
  }

 private:
  int degree_;
  AlgebraOpsPtr<A> ops_;
  Evaluator eval_;
};

// b psi(a^0..a^{n+1}) = sum_i (-1)^i psi(.., a^i a^{i+1}, ..)
//                       + (-1)^{n+1} psi(a^{n+1} a^0, a^1, .., a^n)
template <class A>
Cochain<A> hochschild_b(const Cochain<A>& psi) {
  const int n = psi.degree();
  auto ops = psi.ops();
  return Cochain<A>(n + 1, ops, [psi, ops, n](std::span<const A> a) {
    Complex acc(0.0);
    std::vector<A> args;
    args.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      args.clear();
      for (int j = 0; j < i; ++j) args.push_back(a[static_cast<std::size_t>(j)]);
      args.push_back(ops->multiply(a[static_cast<std::size_t>(i)],
                                   a[static_cast<std::size_t>(i) + 1]));
      for (int j = i + 2; j <= n + 1; ++j) args.push_back(a[static_cast<std::size_t>(j)]);
      acc += (i % 2 == 0 ? 1.0 : -1.0) * psi(args);
    }
    args.clear();
    args.push_back(ops->multiply(a[static_cast<std::size_t>(n) + 1], a[0]));
    for (int j = 1; j <= n; ++j) args.push_back(a[static_cast<std::size_t>(j)]);
    acc += ((n + 1) % 2 == 0 ? 1.0 : -1.0) * psi(args);
    return acc;
  });
}

// lambda psi(a^0..a^n) = (-1)^n psi(a^n, a^0, .., a^{n-1})
template <class A>
Cochain<A> cyclic_lambda(const Cochain<A>& psi) {
  const int n = psi.degree();
  return Cochain<A>(n, psi.ops(), [psi, n](std::span<const A> a) {
    std::vector<A> rot;
    rot.reserve(a.size());
    rot.push_back(a[a.size() - 1]);
    for (std::size_t j = 0; j + 1 < a.size(); ++j) rot.push_back(a[j]);
    return (n % 2 == 0 ? 1.0 : -1.0) * psi(rot);
  });
}

// Cyclic antisymmetrization  A = sum_j lambda^j  (the image is lambda-invariant).
template <class A>
Cochain<A> cyclic_antisymmetrize(const Cochain<A>& psi) {
  const int n = psi.degree();
  std::vector<Cochain<A>> powers;
  powers.push_back(psi);
  for (int j = 1; j <= n; ++j) powers.push_back(cyclic_lambda(powers.back()));
  return Cochain<A>(n, psi.ops(), [powers](std::span<const A> a) {
    Complex acc(0.0);
    for (const auto& p : powers) acc += p(a);
    return acc;
  });
}

// B0 psi(a^0..a^{n-1}) = psi(1, a^0..a^{n-1}) - (-1)^n psi(a^0..a^{n-1}, 1)
template <class A>
Cochain<A> connes_b0(const Cochain<A>& psi) {
  const int n = psi.degree();
  auto ops = psi.ops();
  if (!ops->unit) throw NotUnitalError("connes_b0: algebra has no unit");
  if (n == 0) return Cochain<A>::zero(0, ops);  // degree-0 convention: B = 0
  return Cochain<A>(n - 1, ops, [psi, ops, n](std::span<const A> a) {
    std::vector<A> front, back;
    front.reserve(a.size() + 1);
    back.reserve(a.size() + 1);
    front.push_back(ops->unit());
    for (const auto& x : a) {
      front.push_back(x);
      back.push_back(x);
    }
    back.push_back(ops->unit());
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return psi(front) - sign * psi(back);
  });
}

// B = A o B0 (no extra n+1 normalization; the Cartan identity test is the
// convention validator).
template <class A>
Cochain<A> connes_B(const Cochain<A>& psi) {
  if (psi.degree() == 0) return connes_b0(psi);
  return cyclic_antisymmetrize(connes_b0(psi));
}

// L_delta psi = sum over argument slots of delta-insertion.
template <class A>
Cochain<A> lie_derivative(const Cochain<A>& psi, Derivation<A> delta,
                          std::span<const A> derivation_check_samples = {},
                          double check_tol = 1e-10) {
  auto ops = psi.ops();
  if (!derivation_check_samples.empty()) {
    for (std::size_t i = 0; i + 1 < derivation_check_samples.size(); i += 2) {
      const A& x = derivation_check_samples[i];
      const A& y = derivation_check_samples[i + 1];
      const A lhs = delta(ops->multiply(x, y));
      const A rhs = ops->add(ops->multiply(delta(x), y), ops->multiply(x, delta(y)));
      const A diff = ops->add(lhs, ops->scale(Complex(-1.0), rhs));
      if (!ops->norm) throw Error("lie_derivative: derivation check needs ops.norm");
      if (ops->norm(diff) > check_tol)
        throw NotDerivationError("lie_derivative: Leibniz rule fails on a sample");
    }
  }
  return Cochain<A>(psi.degree(), ops, [psi, delta](std::span<const A> a) {
    Complex acc(0.0);
    std::vector<A> args(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
      args[i] = delta(a[i]);
      acc += psi(args);
      args[i] = a[i];
    }
    return acc;
  });
}

// e_delta psi(a^0, a^1, a^2) = -psi(delta(a^2) a^0, a^1)   (degree 1 only,
// the shape the Cartan identity uses; other degrees are not defined here).
template <class A>
Cochain<A> contraction_e(const Cochain<A>& psi, Derivation<A> delta) {
  if (psi.degree() != 1)
    throw DegreeMismatchError("contraction_e: defined for degree-1 cochains only");
  auto ops = psi.ops();
  return Cochain<A>(2, ops, [psi, ops, delta](std::span<const A> a) {
    std::vector<A> args{ops->multiply(delta(a[2]), a[0]), a[1]};
    return -psi(args);
  });
}

// E_delta psi(a^0) = psi(1, a^0)   (degree 1 only).
template <class A>
Cochain<A> contraction_E(const Cochain<A>& psi, Derivation<A> /*delta*/ = nullptr) {
  if (psi.degree() != 1)
    throw DegreeMismatchError("contraction_E: defined for degree-1 cochains only");
  auto ops = psi.ops();
  if (!ops->unit) throw NotUnitalError("contraction_E: algebra has no unit");
  return Cochain<A>(0, ops, [psi, ops](std::span<const A> a) {
    std::vector<A> args{ops->unit(), a[0]};
    return psi(args);
  });
}

struct CocycleReport {
  double max_b_residual = 0.0;
  double max_lambda_residual = 0.0;
  int samples = 0;
  double tol = 0.0;
  bool passed = false;
};

// sampler(i) must return degree+2 elements (arguments of b psi), deterministic
// in i so reports are reproducible.
template <class A>
CocycleReport is_hochschild_cocycle(const Cochain<A>& psi,
                                    const std::function<std::vector<A>(int)>& sampler,
                                    int nsamples, double tol) {
  CocycleReport rep;
  rep.samples = nsamples;
  rep.tol = tol;
  const Cochain<A> bpsi = hochschild_b(psi);
  for (int i = 0; i < nsamples; ++i) {
    const std::vector<A> args = sampler(i);
    rep.max_b_residual = std::max(rep.max_b_residual, std::abs(bpsi(args)));
  }
  rep.passed = rep.max_b_residual < tol;
  return rep;
}

template <class A>
CocycleReport is_cyclic_cocycle(const Cochain<A>& psi,
                                const std::function<std::vector<A>(int)>& sampler,
                                int nsamples, double tol) {
  CocycleReport rep = is_hochschild_cocycle(psi, sampler, nsamples, tol);
  const Cochain<A> lpsi = cyclic_lambda(psi);
  for (int i = 0; i < nsamples; ++i) {
    std::vector<A> args = sampler(i);
    args.pop_back();  // b-arguments have one extra element
    rep.max_lambda_residual = std::max(rep.max_lambda_residual,
                                       std::abs(lpsi(args) - psi(args)));
  }
  rep.passed = rep.max_b_residual < tol && rep.max_lambda_residual < tol;
  return rep;
}

// Multilinearity spot check in one slot:
// |psi(.., x + s y, ..) - psi(.., x, ..) - s psi(.., y, ..)|
template <class A>
double multilinearity_defect(const Cochain<A>& psi, std::span<const A> base, std::size_t slot,
                             const A& x, const A& y, Complex s) {
  auto ops = psi.ops();
  std::vector<A> args(base.begin(), base.end());
  args[slot] = ops->add(x, ops->scale(s, y));
  const Complex combined = psi(args);
  args[slot] = x;
  const Complex at_x = psi(args);
  args[slot] = y;
  const Complex at_y = psi(args);
  return std::abs(combined - at_x - s * at_y);
}

}  // namespace sst
