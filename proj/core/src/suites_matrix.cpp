#include <chrono>
#include <random>

#include "sst/cochain_ops.hpp"
#include "sst/matrix_triple.hpp"
#include "sst/suites.hpp"

namespace sst {

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  void stamp(CheckReport& r) const { r.runtime_ms = ms_since(t0); }
};

// Phi_{D,sigma} as a Cochain over the matrix algebra, for the b / lambda
// residual checks.
Cochain<Matrix> chern_cochain_n(const MatrixTwistedTriple& T, int n) {
  auto ops = matrix_algebra_ops(T.dim());
  return Cochain<Matrix>(
      n, ops, [&T](std::span<const Matrix> a) { return chern_phi(T, a); });
}

Cochain<Matrix> homotopy_cochain(const MatrixTwistedTriple& T, double t, int n) {
  auto ops = matrix_algebra_ops(T.dim());
  return Cochain<Matrix>(
      n, ops, [&T, t](std::span<const Matrix> a) { return homotopy_phi_t(T, t, a); });
}

std::vector<Matrix> random_tuple(const MatrixTwistedTriple& T, int count, std::uint64_t seed) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(T.random_even_element(seed + static_cast<std::uint64_t>(i)));
  return out;
}

Eigen::Index dim_for_trial(int trial) {
  constexpr Eigen::Index dims[] = {2, 4, 8};  // half dims -> full dims 4, 8, 16
  return dims[trial % 3];
}

}  // namespace

SuiteResult run_matrix_suite(const RunConfig& cfg) {
  SuiteResult out;
  const double ts = cfg.tol_scale;
  const std::uint64_t seed = cfg.seed;

  // --- structural invariants: grading, unitarity of the twist -------------
  {
    Timer timer;
    double worst_anti = 0.0, worst_unit = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto T =
          MatrixTwistedTriple::random(dim_for_trial(trial), seed + 11 * trial + 1);
      worst_anti = std::max(worst_anti, (T.D() * T.gamma() + T.gamma() * T.D()).norm());
      const Matrix a = T.random_even_element(seed + 7 * trial + 3);
      worst_unit = std::max(
          worst_unit, (T.sigma(a.adjoint()) - T.sigma(a, -1.0).adjoint()).norm());
    }
    auto r1 = make_residual_check("mat.grading.anticommute", "D gamma = -gamma D",
                                  worst_anti, 1e-13 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("mat.sigma.unitarity", "sigma(a*) = (sigma^-1(a))*",
                                  worst_unit, 1e-12 * ts, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- perturbed triple: factorization through the untwisted commutator ---
  {
    Timer timer;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index m = dim_for_trial(trial);
      const auto flat = MatrixTwistedTriple::random(m, seed + 23 * trial + 5, 0.0);
      const auto tmp = MatrixTwistedTriple::random(m, seed + 29 * trial + 7);
      const Matrix a = flat.random_even_element(seed + 31 * trial + 9);
      worst = std::max(worst, perturb_factorization_residual(flat, tmp.h(), a));
    }
    auto r = make_residual_check("mat.perturb.factorization",
                                 "D'a - sigma(a)D' factors through e^h [D,b] e^h", worst,
                                 1e-11 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // central (scalar) h: sigma = id and D' = e^{2h} D
  {
    Timer timer;
    const auto flat = MatrixTwistedTriple::random(4, seed + 101, 0.0);
    const double c = 0.37;
    const Matrix h = c * Matrix::Identity(flat.dim(), flat.dim());
    const auto pert = perturb(flat, h);
    const Matrix a = flat.random_even_element(seed + 103);
    const double sig_defect = (pert.sigma(a) - a).norm();
    const double d_defect = (pert.D() - std::exp(2.0 * c) * flat.D()).norm();
    auto r = make_residual_check("mat.perturb.central", "scalar h: sigma = id, D' = e^{2h} D",
                                 std::max(sig_defect, d_defect), 1e-12 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // --- derivation property of d_sigma and the bimodule structure ----------
  {
    Timer timer;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto T = MatrixTwistedTriple::random(dim_for_trial(trial), seed + 41 * trial + 2);
      const Matrix a = T.random_even_element(seed + 43 * trial + 4);
      const Matrix b = T.random_even_element(seed + 47 * trial + 6);
      const Matrix lhs = T.d_sigma(a * b);
      const Matrix rhs = T.d_sigma(a) * b + T.sigma(a) * T.d_sigma(b);
      worst = std::max(worst, (lhs - rhs).norm());
    }
    auto r = make_residual_check("mat.dsigma.leibniz",
                                 "d_sigma(ab) = d_sigma(a) b + sigma(a) d_sigma(b)", worst,
                                 1e-12 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // bimodule closure: sigma(a) omega b stays in the span of gauge potentials
  {
    Timer timer;
    const auto T = MatrixTwistedTriple::random(2, seed + 201);
    const Eigen::Index d = T.dim();
    std::vector<Matrix> spanning;
    for (int i = 0; i < 24; ++i) {
      const Matrix ai = T.random_even_element(seed + 211 + 2 * i);
      const Matrix bi = T.random_even_element(seed + 212 + 2 * i);
      spanning.push_back(ai * T.d_sigma(bi));
    }
    Eigen::MatrixXcd basis(d * d, static_cast<Eigen::Index>(spanning.size()));
    for (std::size_t i = 0; i < spanning.size(); ++i)
      basis.col(static_cast<Eigen::Index>(i)) = spanning[i].reshaped();
    const Matrix a = T.random_even_element(seed + 251);
    const Matrix b = T.random_even_element(seed + 252);
    const Matrix omega = spanning[0];
    const Matrix moved = bimodule_action(T, a, omega, b);
    // residual of least-squares projection onto the span
    const Eigen::VectorXcd v = moved.reshaped();
    const Eigen::VectorXcd fitted = basis * basis.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
    auto r = make_residual_check("mat.bimodule.span",
                                 "a . omega . b = sigma(a) omega b lands in Omega^1_D",
                                 (fitted - v).norm(), 1e-9 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // --- cyclic cocycle property of the twisted Chern character -------------
  for (const int n : {2, 4}) {
    Timer timer;
    double worst_b = 0.0, worst_lambda = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto T = MatrixTwistedTriple::random(dim_for_trial(trial),
                                                 seed + 1000 + 17 * trial);
      const auto phi = chern_cochain_n(T, n);
      const auto bphi = hochschild_b(phi);
      const auto lphi = cyclic_lambda(phi);
      const auto args = random_tuple(T, n + 2, seed + 2000 + 13 * trial);
      worst_b = std::max(worst_b, std::abs(bphi(args)));
      const std::vector<Matrix> short_args(args.begin(), args.end() - 1);
      worst_lambda = std::max(worst_lambda, std::abs(lphi(short_args) - phi(short_args)));
    }
    auto r1 = make_residual_check("mat.chern.cocycle.b.n" + std::to_string(n),
                                  "b Phi_{D,sigma} = 0", worst_b, 1e-10 * ts, {{"n", n}},
                                  seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("mat.chern.cocycle.lambda.n" + std::to_string(n),
                                  "lambda Phi = Phi", worst_lambda, 1e-10 * ts, {{"n", n}},
                                  seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- conjugation identity for the perturbed Chern character -------------
  {
    Timer timer;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index m = dim_for_trial(trial);
      const auto flat = MatrixTwistedTriple::random(m, seed + 3000 + 19 * trial, 0.0);
      const auto withh = MatrixTwistedTriple::random(m, seed + 3500 + 19 * trial);
      const auto pert = perturb(flat, withh.h());
      const auto tuple = random_tuple(pert, 3, seed + 4000 + 19 * trial);
      const Complex lhs = chern_phi(pert, tuple);
      std::vector<Matrix> conj_tuple;
      const Matrix eh = pert.exp_h(1.0), ehm = pert.exp_h(-1.0);
      for (const auto& a : tuple) conj_tuple.push_back(eh * a * ehm);
      const Complex rhs = chern_phi(flat, conj_tuple);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    auto r = make_residual_check("mat.chern.conjugation",
                                 "Phi_{D',sigma}(a..) = Phi_{D,id}(e^h a e^-h ..)", worst,
                                 1e-11 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // --- half characters: split and index pairing ----------------------------
  {
    Timer timer;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto T = MatrixTwistedTriple::random(dim_for_trial(trial), seed + 5000 + 7 * trial);
      const auto tuple = random_tuple(T, 3, seed + 5100 + 7 * trial);
      const auto [pp, pm] = phi_pm(T, tuple);
      worst = std::max(worst, std::abs(chern_phi(T, tuple) - (pp - pm)));
    }
    auto r = make_residual_check("mat.phi_pm.split", "Phi = Phi^+ - Phi^-", worst,
                                 1e-11 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  {
    Timer timer;
    double worst_pairing = 0.0, worst_sign = 0.0, worst_adjoint = 0.0;
    int idempotents = 0;
    for (int trial = 0; trial < 21; ++trial) {
      const Eigen::Index m = dim_for_trial(trial);
      const auto T = MatrixTwistedTriple::random(m, seed + 6000 + 13 * trial);
      const Eigen::Index rp = 1 + (trial % m), rm = (trial / 3) % m;
      const Matrix p = T.random_even_projection(rp, rm, seed + 6100 + 13 * trial);
      const auto e = IdempotentData::twisted(T, p);
      e.validate(T);
      const auto res = index_pair(T, e, 2);
      ++idempotents;
      worst_pairing = std::max(worst_pairing, res.pairing_defect);
      worst_sign = std::max(worst_sign,
                            static_cast<double>(std::abs(res.index_plus + res.index_minus)));
      const std::vector<Matrix> tuple(3, e.e);
      const auto [pp, pm] = phi_pm(T, tuple);
      worst_adjoint = std::max(worst_adjoint, std::abs(std::conj(pp) + pm));
      // expected integers from the block ranks of p
      const long expect = static_cast<long>(rp) - static_cast<long>(rm);
      worst_sign = std::max(worst_sign, static_cast<double>(std::labs(res.index_plus - expect)));
    }
    auto r1 = make_residual_check("mat.index.pairing", "Index^± = Phi^±(e,..,e)",
                                  worst_pairing, 1e-9 * ts, {{"idempotents", idempotents}},
                                  seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("mat.index.sign",
                                  "Index^+ = -Index^- and matches block ranks", worst_sign,
                                  0.5, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
    auto r3 = make_residual_check("mat.phi_pm.adjoint_idempotent",
                                  "conj Phi^+(e..e) = -Phi^-(e..e) when e* = sigma(e)",
                                  worst_adjoint, 1e-9 * ts, {}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);
  }

  // index constancy along the modular homotopy sigma_{it}(e)
  {
    Timer timer;
    double worst = 0.0;
    const auto T = MatrixTwistedTriple::random(4, seed + 7000);
    const Matrix p = T.random_even_projection(3, 1, seed + 7001);
    const auto base = index_pair(T, IdempotentData::projection(p), 2);
    for (int i = 0; i <= 10; ++i) {
      const double t = static_cast<double>(i) / 10.0;
      const Matrix et = T.sigma_imaginary_time(p, t);
      const auto res = index_pair(T, IdempotentData::projection(et), 2);
      worst = std::max(worst, static_cast<double>(std::labs(res.index_plus - base.index_plus)) +
                                  static_cast<double>(std::labs(res.index_minus - base.index_minus)));
    }
    auto r = make_residual_check("mat.index.homotopy_constancy",
                                 "indices constant along sigma_{it}(e), 11 points", worst, 0.5,
                                 {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  // --- untwisting by the phase and the two endpoint identities ------------
  {
    Timer timer;
    double worst_f2 = 0.0, worst_id = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto T = MatrixTwistedTriple::random(dim_for_trial(trial), seed + 8000 + 3 * trial);
      const auto samples = random_tuple(T, 4, seed + 8100 + 3 * trial);
      const auto rep = untwist_phase(T, samples);
      worst_f2 = std::max(worst_f2,
                          (rep.F * rep.F - Matrix::Identity(T.dim(), T.dim())).norm());
      worst_id = std::max(worst_id, rep.max_identity_residual);
    }
    auto r1 = make_residual_check("mat.untwist.involution", "F^2 = 1", worst_f2, 1e-12 * ts,
                                  {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check(
        "mat.untwist.identity",
        "[F,a] = |D|^-1 (d_sigma a - (|D|a - sigma(a)|D|) F)", worst_id, 1e-11 * ts, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  {
    Timer timer;
    double worst0 = 0.0, worst1 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto T = MatrixTwistedTriple::random(3, seed + 9000 + 5 * trial);
      const auto tuple = random_tuple(T, 3, seed + 9100 + 5 * trial);
      const auto rep = adjoint_chern_endpoints(T, tuple);
      worst0 = std::max(worst0, rep.residual0);
      worst1 = std::max(worst1, rep.residual1);
    }
    auto r1 = make_residual_check("mat.endpoints.pi0", "Phi_0 = (Phi^+)*", worst0,
                                  1e-10 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("mat.endpoints.pi1", "Phi_1 = -Phi^-", worst1, 1e-10 * ts,
                                  {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- the D_t homotopy: per-t cocycle residuals and endpoints -------------
  {
    Timer timer;
    double worst_cocycle = 0.0, worst_end = 0.0;
    for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (int trial = 0; trial < 8; ++trial) {
        const auto T = MatrixTwistedTriple::random(2, seed + 11000 + 31 * trial);
        const auto phi_t = homotopy_cochain(T, t, 2);
        const auto bphi = hochschild_b(phi_t);
        const auto lphi = cyclic_lambda(phi_t);
        const auto args = random_tuple(T, 4, seed + 11100 + 31 * trial);
        worst_cocycle = std::max(worst_cocycle, std::abs(bphi(args)));
        const std::vector<Matrix> short_args(args.begin(), args.end() - 1);
        worst_cocycle =
            std::max(worst_cocycle, std::abs(lphi(short_args) - phi_t(short_args)));
      }
    }
    for (int trial = 0; trial < 8; ++trial) {
      const auto T = MatrixTwistedTriple::random(3, seed + 12000 + 37 * trial);
      const auto tuple = random_tuple(T, 3, seed + 12100 + 37 * trial);
      worst_end = std::max(worst_end,
                           std::abs(homotopy_phi_t(T, 0.0, tuple) - chern_phi(T, tuple)));
      // documented normalization: Phi_1 = -Phi_F
      worst_end = std::max(worst_end,
                           std::abs(homotopy_phi_t(T, 1.0, tuple) + chern_phi_F(T, tuple)));
    }
    auto r1 = make_residual_check("mat.homotopy.cocycle",
                                  "Phi_t cyclic cocycle at t in {0,1/4,1/2,3/4,1}",
                                  worst_cocycle, 1e-10 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("mat.homotopy.endpoints",
                                  "Phi_0 = Phi_{D,sigma}, Phi_1 = -Phi_F", worst_end,
                                  1e-10 * ts, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- simplicial identities of the cochain operators (matrix algebra) ----
  {
    Timer timer;
    const auto T = MatrixTwistedTriple::random(2, seed + 13000);
    auto ops = matrix_algebra_ops(T.dim());
    std::mt19937_64 rng(seed + 13001);
    // random multilinear functional: products of linear trace functionals
    auto random_cochain = [&](int degree) {
      std::vector<Matrix> probes;
      for (int i = 0; i <= degree; ++i) probes.push_back(T.random_even_element(rng()));
      return Cochain<Matrix>(degree, ops, [probes](std::span<const Matrix> a) {
        Complex prod(1.0);
        for (std::size_t i = 0; i < a.size(); ++i) prod *= (probes[i] * a[i]).trace();
        return prod;
      });
    };
    double worst = 0.0;
    for (int degree = 1; degree <= 3; ++degree) {
      const auto psi = random_cochain(degree);
      const auto bb = hochschild_b(hochschild_b(psi));
      const auto mixed_args = random_tuple(T, degree + 3, seed + 13100 + degree);
      worst = std::max(worst, std::abs(bb(mixed_args)));
      if (degree >= 2) {
        const auto BB = connes_B(connes_B(psi));
        const std::vector<Matrix> bb_args(mixed_args.begin(),
                                          mixed_args.begin() + (degree - 1));
        worst = std::max(worst, std::abs(BB(bb_args)));
      }
      const auto anti = hochschild_b(connes_B(psi));
      const auto anti2 = connes_B(hochschild_b(psi));
      const std::vector<Matrix> same_args(mixed_args.begin(), mixed_args.end() - 2);
      worst = std::max(worst, std::abs(anti(same_args) + anti2(same_args)));
    }
    auto r = make_residual_check("mat.cochain.simplicial", "b^2 = 0, B^2 = 0, bB + Bb = 0",
                                 worst, 1e-9 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  return out;
}

}  // namespace sst
