#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "sst/samples.hpp"
#include "sst/suites.hpp"
#include "sst/transverse_cocycles.hpp"

namespace sst {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  void stamp(CheckReport& r) const {
    r.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  }
};

// sup_x |(g phi'^{1/2})'(x)| phi'(x)^{-1/2}: the closed-form operator norm of
// the twisted commutator with g U*_phi.
double commutator_symbol_sup(const PeriodicFunction& g, const CircleDiffeo& phi) {
  const std::size_t grid = 1 << 15;
  std::vector<Complex> w(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    w[j] = g.eval(x) * std::sqrt(phi.derivative(x));
  }
  std::vector<Complex> hat = w;
  fft::transform(hat, false);
  const int gi = static_cast<int>(grid);
  for (int k = 0; k < gi; ++k) {
    const int mode = k <= gi / 2 ? k : k - gi;
    hat[static_cast<std::size_t>(k)] *= Complex(0.0, kTwoPi * mode) / static_cast<double>(gi);
  }
  fft::transform(hat, true);  // (g phi'^{1/2})' samples
  double sup = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    sup = std::max(sup, std::abs(hat[j]) / std::sqrt(phi.derivative(x)));
  }
  return sup;
}

// the coefficient (1/i)(g phi'^{1/2})' phi'^{-1/2} as a band-limited function
PeriodicFunction commutator_symbol(const PeriodicFunction& g, const CircleDiffeo& phi,
                                   int band) {
  const std::size_t grid = grid_size_for(band);
  const PeriodicFunction sq = derivative_power(phi, Complex(0.5, 0.0)).fn;
  const PeriodicFunction inner = (g * sq).derivative();
  const PeriodicFunction sqinv = derivative_power(phi, Complex(-0.5, 0.0)).fn;
  std::vector<Complex> vals(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(grid);
    vals[j] = inner.eval(x) * sqinv.eval(x) / Complex(0.0, 1.0);
  }
  return project_samples(vals, band).fn;
}

GroupWord random_word(std::mt19937_64& rng) {
  // pool closed under inversion so products localize often
  static const int pool_len = 6;
  const int pick = static_cast<int>(rng() % pool_len);
  switch (pick) {
    case 0: return GroupWord::identity();
    case 1: return GroupWord::generator(0, +1);
    case 2: return GroupWord::generator(0, -1);
    case 3: return GroupWord::generator(1, +1);
    case 4: return GroupWord::generator(1, -1);
    default:
      return GroupWord::generator(0, +1).concat(GroupWord::generator(1, -1));
  }
}

MonomialPair random_localized_pair(int band, std::mt19937_64& rng) {
  MonomialPair pair;
  pair.left.coeff = random_band_function(band, rng(), 1.0);
  pair.right.coeff = random_band_function(band, rng(), 1.0);
  const GroupWord w = random_word(rng);
  pair.left.word = w;
  pair.right.word = w.inverse();
  return pair;
}

}  // namespace

SuiteResult run_circle_suite(const RunConfig& cfg) {
  SuiteResult out;
  const double ts = cfg.tol_scale;
  const std::uint64_t seed = cfg.seed;
  const auto group = standard_group(0.3, 1.0 / 3.0);
  const GroupWord ws = GroupWord::generator(0);
  const GroupWord wr = GroupWord::generator(1);
  const CircleDiffeo& phi_s = group->realize(ws);
  int n_big = cfg.n_trunc;
  for (int n : cfg.n_ladder) n_big = std::max(n_big, n);

  // --- twisted commutator boundedness: interior norms along the N ladder ---
  {
    Timer timer;
    const PeriodicFunction g = unit_modulus_profile(phi_s);
    const double sup = commutator_symbol_sup(g, phi_s);
    const auto a = CrossedProductElement::monomial(group, g, ws);

    ConvergenceTable table_d{"lemma2_interior_norm_dirac", {}};
    ConvergenceTable table_abs{"lemma2_interior_norm_absdirac", {}};
    double final_rel = 1.0;
    double prev_d = 0.0, prev_abs = 0.0;
    for (std::size_t i = 0; i < cfg.n_ladder.size(); ++i) {
      const int N = cfg.n_ladder[i];
      const TruncatedOperator pa = represent(a, N);
      const TruncatedOperator psa = represent(sigma(a), N);
      const TruncatedOperator d = dirac(N);
      const double nd = (d * pa - psa * d).interior().operator_norm();
      const TruncatedOperator habs = abs_dirac(N);
      const double nabs = (habs * pa - psa * habs).interior().operator_norm();
      table_d.rows.push_back({N, Complex(nd, 0.0), i == 0 ? 0.0 : std::abs(nd - prev_d)});
      table_abs.rows.push_back(
          {N, Complex(nabs, 0.0), i == 0 ? 0.0 : std::abs(nabs - prev_abs)});
      prev_d = nd;
      prev_abs = nabs;
      if (i + 1 == cfg.n_ladder.size()) final_rel = std::abs(nd - sup) / sup;
    }
    out.tables.push_back(table_d);
    out.tables.push_back(table_abs);

    bool d_monotone = true;
    for (std::size_t i = 2; i < table_d.rows.size(); ++i)
      if (table_d.rows[i].delta > table_d.rows[i - 1].delta) d_monotone = false;
    const bool abs_cauchy = table_abs.rows.size() < 3 ||
                            table_abs.rows.back().delta < table_abs.rows[1].delta;

    auto r1 = make_residual_check(
        "circ.lemma2.norm", "interior |d_sigma(gU)| matches sup |(g phi'^1/2)' phi'^-1/2|",
        final_rel, 1e-6 * ts, {{"N", cfg.n_ladder.back()}, {"sup", sup}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("circ.lemma2.deltas",
                                  "ladder deltas shrink (monotone for D, Cauchy for |D|)",
                                  (d_monotone && abs_cauchy) ? 0.0 : 1.0, 0.5, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- state and modular structure -----------------------------------------
  {
    Timer timer;
    std::mt19937_64 rng(seed + 21);
    double worst_trace = 0.0, worst_offdiag = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      const auto a = CrossedProductElement::monomial(
          group, random_band_function(6, rng(), 1.0), random_word(rng));
      const auto b = CrossedProductElement::monomial(
          group, random_band_function(6, rng(), 1.0), random_word(rng));
      const Complex lhs = state(multiply(a, b));
      const Complex rhs = state(multiply(b, sigma(a, -1)));
      worst_trace = std::max(worst_trace, std::abs(lhs - rhs));
    }
    const auto off = CrossedProductElement::monomial(
        group, random_band_function(6, rng(), 1.0), ws);
    worst_offdiag = std::abs(state(off));
    auto r1 = make_residual_check("circ.state.sigma_trace", "state(ab) = state(b sigma^-1(a))",
                                  worst_trace, 1e-10 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("circ.state.localized", "state(f U_w) = 0 off the identity",
                                  worst_offdiag, 1e-15, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  {
    Timer timer;
    std::mt19937_64 rng(seed + 31);
    double worst_analytic = 0.0, worst_group = 0.0, worst_auto = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      const auto a = CrossedProductElement::monomial(
          group, random_band_function(6, rng(), 1.0), ws);
      const auto b = CrossedProductElement::monomial(
          group, random_band_function(6, rng(), 1.0), random_word(rng));
      // analytic continuation at z = -i reproduces sigma
      const auto cont = sigma_analytic(a, Complex(0.0, -1.0));
      const auto direct = sigma(a);
      worst_analytic = std::max(worst_analytic, (cont - direct).l2_norm());
      // group law sigma_s sigma_t = sigma_{s+t}
      const auto two_step = sigma_t(sigma_t(a, 0.4), 0.25);
      const auto one_step = sigma_t(a, 0.65);
      worst_group = std::max(worst_group, (two_step - one_step).l2_norm());
      // automorphism property
      const auto lhs = sigma(multiply(a, b));
      const auto rhs = multiply(sigma(a), sigma(b));
      worst_auto = std::max(worst_auto, (lhs - rhs).l2_norm());
    }
    auto r1 = make_residual_check("circ.sigma.analytic_continuation",
                                  "sigma_t at t = -i equals sigma", worst_analytic,
                                  1e-12 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("circ.sigma.group_law", "sigma_s sigma_t = sigma_{s+t}",
                                  worst_group, 1e-11 * ts, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
    auto r3 = make_residual_check("circ.sigma.automorphism", "sigma(ab) = sigma(a) sigma(b)",
                                  worst_auto, 1e-11 * ts, {}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);
  }

  // delta as the generator of the modular group
  {
    Timer timer;
    const auto a = CrossedProductElement::monomial(
        group, random_band_function(6, seed + 41, 1.0), ws);
    const auto da = delta(a);
    auto defect = [&](double t) {
      const auto fd = (1.0 / t) * (sigma_t(a, t) - a);
      return (fd - da).l2_norm();
    };
    const double e1 = defect(1e-3), e2 = defect(5e-4);
    auto r1 = make_residual_check("circ.delta.generator",
                                  "(sigma_t - 1)/t -> delta with O(t) error", e1,
                                  1e-2 * ts, {{"t", 1e-3}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("circ.delta.generator_rate", "finite difference error halves",
                                  e2 / e1, 0.65, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  // --- representation-level checks at moderate truncation ------------------
  {
    Timer timer;
    const int N = std::min(cfg.n_trunc, 256);
    std::mt19937_64 rng(seed + 51);
    const PeriodicFunction g = random_band_function(5, rng(), 1.0);
    const auto a = CrossedProductElement::monomial(group, g, ws);

    // star representation
    const TruncatedOperator lhs_star = represent(involution(a), N);
    const TruncatedOperator rhs_star = represent(a, N).adjoint();
    const double star_res = (lhs_star - rhs_star).interior().operator_norm();
    auto r1 = make_residual_check("circ.rep.star", "pi(a*) = pi(a)* up to truncation halo",
                                  star_res, 1e-8 * ts, {{"N", N}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);

    // unitarity of pi(U_w) restricted to interior modes
    const auto u_elem = CrossedProductElement::monomial(
        group, PeriodicFunction::constant(1.0), ws);
    const TruncatedOperator pu = represent(u_elem, N);
    const TruncatedOperator prod = pu.adjoint() * pu;
    TruncatedOperator eye(N, "I");
    eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
    const double unit_res = (prod - eye).interior().operator_norm();
    auto r2 = make_residual_check("circ.rep.unitary", "pi(U_w)* pi(U_w) = 1 on the interior",
                                  unit_res, 1e-8 * ts, {{"N", N}}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);

    // translations compose as the group
    const TruncatedOperator vs = translation(*group, ws, N);
    const TruncatedOperator vr = translation(*group, wr, N);
    const TruncatedOperator vsr = translation(*group, ws.concat(wr), N);
    const double grp_res = (vs * vr - vsr).interior().operator_norm();
    auto r3 = make_residual_check("circ.rep.translation_group",
                                  "V_w V_v = V_{wv} on the interior", grp_res, 1e-8 * ts,
                                  {{"N", N}}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);

    // d_sigma(g U_w) = multiplication by the closed-form coefficient o pi(U_w)
    const TruncatedOperator tw = twisted_commutator(dirac(N), a, N);
    const PeriodicFunction u_sym = commutator_symbol(g, phi_s, 48);
    const auto mu = CrossedProductElement::monomial(group, u_sym, GroupWord::identity());
    const TruncatedOperator rhs_sym = represent(mu, N) * pu;
    const double sym_res = (tw - rhs_sym).interior().operator_norm();
    auto r4 = make_residual_check("circ.commutator.symbol",
                                  "d_sigma(gU) = (1/i)(g phi'^1/2)' phi'^-1/2 . pi(U)",
                                  sym_res, 1e-8 * ts, {{"N", N}}, seed);
    timer.stamp(r4);
    out.checks.push_back(r4);

    // bimodule derivation rule as matrices
    const PeriodicFunction g2 = random_band_function(5, rng(), 1.0);
    const auto b = CrossedProductElement::monomial(group, g2, wr);
    const TruncatedOperator d_ab = twisted_commutator(dirac(N), multiply(a, b), N);
    const TruncatedOperator rhs_leib =
        tw * represent(b, N) + represent(sigma(a), N) * twisted_commutator(dirac(N), b, N);
    const double leib_res = (d_ab - rhs_leib).interior().operator_norm();
    auto r5 = make_residual_check("circ.derivation.matrix",
                                  "d_sigma(ab) = d_sigma(a) pi(b) + pi(sigma(a)) d_sigma(b)",
                                  leib_res, 1e-9 * ts, {{"N", N}}, seed);
    timer.stamp(r5);
    out.checks.push_back(r5);
  }

  // --- pseudodifferential order bookkeeping --------------------------------
  {
    Timer timer;
    const int N = std::min(cfg.n_trunc, 256);
    const PeriodicFunction g = random_band_function(3, seed + 61, 1.0);
    const auto a = CrossedProductElement::monomial(group, g, ws);

    // P = |D|^2, m = 2: (P pi(a) - pi(sigma^2 a) P) V_w should gain one order
    const TruncatedOperator habs = abs_dirac(N);
    const TruncatedOperator p2 = habs * habs;
    const TruncatedOperator lhs =
        (p2 * represent(a, N) - represent(sigma(a, 2), N) * p2) * translation(*group, ws, N);
    const int half = N / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (int m = 8; m <= half; ++m) {
      for (const int sgn : {-1, 1}) {
        double nrm = 0.0;
        for (int k = -half; k <= half; ++k) nrm += std::norm(lhs.entry(k, sgn * m));
        nrm = std::sqrt(nrm);
        const double x = std::log(static_cast<double>(m)), y = std::log(std::max(nrm, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
    }
    const double growth = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    auto r1 = make_residual_check("circ.orderdrop.growth",
                                  "(P pi(a) - pi(sigma^2 a) P) V_w has order m-1", growth,
                                  1.1, {{"N", N}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);

    // summability exponents
    const TruncatedOperator inv_abs = inverse_diagonal(abs_dirac(N));
    const double alpha_abs = summability_exponent(inv_abs);
    auto r2 = make_residual_check("circ.summability.abs_dirac", "s_j(|D|^-1) ~ j^-1",
                                  std::abs(alpha_abs - 1.0), 0.05, {{"N", N}}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);

    TruncatedOperator dpatch = dirac(N);
    dpatch.set_entry(0, 0, Complex(1.0, 0.0));
    const TruncatedOperator dinv = inverse_diagonal(dpatch);
    const TruncatedOperator tw_inv =
        dinv * represent(a, N) - represent(sigma(a, -1), N) * dinv;
    const double alpha_tw = summability_exponent(tw_inv);
    auto r3 = make_residual_check("circ.summability.order_two",
                                  "D^-1 a - sigma^-1(a) D^-1 decays one order faster",
                                  alpha_tw >= 1.8 ? 0.0 : 1.8 - alpha_tw, 1e-12,
                                  {{"alpha", alpha_tw}}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);

    TruncatedOperator eye(N, "I");
    eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
    const double alpha_id = summability_exponent(eye);
    auto r4 = make_residual_check("circ.summability.identity", "s_j(1) ~ j^0",
                                  std::abs(alpha_id), 0.05, {}, seed);
    timer.stamp(r4);
    out.checks.push_back(r4);
  }

  // --- heat curves and the residue functional ------------------------------
  {
    Timer timer;
    const int N = std::min(cfg.n_trunc, 256);
    const TruncatedOperator d = dirac(N);
    TruncatedOperator eye(N, "I");
    eye.matrix() = Eigen::MatrixXcd::Identity(2 * N + 1, 2 * N + 1);
    const std::vector<double> times{2e-5, 1e-4, 1e-3, 1e-2};
    const auto curve = heat_trace_curve(eye, d, times);
    // Poisson-resummed oracle: sum_k e^{-t(2pi k)^2} = sum_m e^{-m^2/(4t)} / sqrt(4 pi t)
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      double theta = 0.0;
      for (int m = -6; m <= 6; ++m)
        theta += std::exp(-static_cast<double>(m) * m / (4.0 * t));
      theta /= std::sqrt(4.0 * std::numbers::pi * t);
      worst = std::max(worst, std::abs(curve[i].real() - theta));
    }
    auto r1 = make_residual_check("circ.heat.theta", "heat trace matches the theta function",
                                  worst, 1e-12 * ts, {{"N", N}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);

    // small-t law: slope of log Tr(pi(F) e^{-tD^2}) vs log t is -1/2 (1%)
    const PeriodicFunction F = PeriodicFunction::constant(1.0) +
                               random_band_function(4, seed + 71, 0.4);
    const auto pf = represent(CrossedProductElement::monomial(group, F, GroupWord::identity()),
                              N);
    const std::vector<double> ts2{2e-5, 4e-5, 8e-5};
    const auto curve2 = heat_trace_curve(pf, d, ts2);
    const double slope = (std::log(std::abs(curve2[2].real())) -
                          std::log(std::abs(curve2[0].real()))) /
                         (std::log(ts2[2]) - std::log(ts2[0]));
    auto r2 = make_residual_check("circ.heat.small_t_exponent",
                                  "leading heat-trace power is t^-1/2", std::abs(slope + 0.5),
                                  5e-3, {{"N", N}}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
  }

  {
    Timer timer;
    const int N = n_big;
    const HeatFitConfig hcfg = cfg.heat_config(N);
    std::mt19937_64 rng(seed + 81);
    const PeriodicFunction f = PeriodicFunction::constant(1.3) +
                               random_band_function(8, rng(), 0.8);
    const auto pf = represent(CrossedProductElement::monomial(group, f, GroupWord::identity()),
                              N);

    // zeta-function oracle at the identity: residue of pi(f)|D|^-1 is 2 int f
    const auto res_id = residue_of_part(pf, CircleDiffeo::identity(), hcfg);
    const Complex expect = 2.0 * f.integral();
    auto r1 = make_check("circ.residue.zeta_identity",
                         "residue of pi(f)|D|^-1 = 2 int f (zeta oracle)", res_id.value,
                         expect, 1e-3 * std::abs(expect) * ts,
                         {{"N", N}, {"fit_residual", res_id.fit_residual}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);

    // agreement with the Wodzicki closed form
    auto r1b = make_check("circ.residue.wodzicki", "residue matches the Wodzicki closed form",
                          res_id.value, wodzicki_closed_form(f),
                          1e-3 * std::abs(expect) * ts, {{"N", N}}, seed);
    timer.stamp(r1b);
    out.checks.push_back(r1b);

    // linearity in the prefactor
    const PeriodicFunction f2 = random_band_function(8, rng(), 0.7);
    const auto pf2 = represent(
        CrossedProductElement::monomial(group, f2, GroupWord::identity()), N);
    TruncatedOperator combo = pf + pf2;
    combo.matrix() = pf.matrix() + 2.0 * pf2.matrix();
    const Complex lin_lhs = residue_of_part(combo, CircleDiffeo::identity(), hcfg).value;
    const Complex lin_rhs =
        res_id.value + 2.0 * residue_of_part(pf2, CircleDiffeo::identity(), hcfg).value;
    auto r2 = make_check("circ.residue.linearity", "residue is linear in the prefactor",
                         lin_lhs, lin_rhs, 1e-10 * ts, {{"N", N}}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);

    // finite-rank patch invariance: zero-mode eigenvalue 0 / 1 / 2
    const Eigen::VectorXcd diag = pf.matrix().diagonal();
    const Complex v0 = residue_from_diagonal(diag, N, hcfg).value;
    const Complex v1 = residue_from_diagonal(diag, N, hcfg, 1.0).value;
    const Complex v2 = residue_from_diagonal(diag, N, hcfg, 2.0).value;
    const double patch_dev = std::max(std::abs(v1 - v0), std::abs(v2 - v0));
    auto r3 = make_residual_check("circ.residue.patch_invariance",
                                  "residue insensitive to the zero-mode patch", patch_dev,
                                  1e-6 * ts, {{"N", N}}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);

    // fixed-point vanishing across the sine family
    double worst_rel = 0.0;
    for (const double eps : {0.2, 0.3, 0.5}) {
      const CircleDiffeo chi = CircleDiffeo::sine_family(eps);
      const TruncatedOperator c = composition_operator(chi, N);
      for (int trial = 0; trial < 4; ++trial) {
        const PeriodicFunction F = random_band_function(8, rng(), 1.0);
        const auto pF = represent(
            CrossedProductElement::monomial(group, F, GroupWord::identity()), N);
        const auto res = residue_from_diagonal(diagonal_of_product(c, pF), N, hcfg);
        worst_rel = std::max(worst_rel, std::abs(res.value) / F.sup_norm());
      }
    }
    auto r4 = make_residual_check("circ.residue.fixed_point_vanishing",
                                  "residue vanishes for nondegenerate fixed-point words",
                                  worst_rel, 1e-3 * ts, {{"N", N}}, seed);
    timer.stamp(r4);
    out.checks.push_back(r4);

    // sigma^{-1}-trace of the Dixmier surrogate
    const PeriodicFunction gf = random_band_function(5, rng(), 0.8);
    const PeriodicFunction hf = random_band_function(5, rng(), 0.8);
    const auto t_mono = CrossedProductElement::monomial(group, gf, ws);
    const auto a_mono = CrossedProductElement::monomial(group, hf, ws.inverse());
    const TruncatedOperator t_op = represent(t_mono, N);
    const Complex dix_lhs = dixmier_surrogate(t_op, sigma(a_mono, -1), hcfg);
    const TruncatedOperator pa_op = represent(a_mono, N);
    const Complex dix_rhs =
        residue_from_diagonal(diagonal_of_product(pa_op, t_op), N, hcfg).value;
    auto r5 = make_check("circ.dixmier.sigma_shuffle",
                         "Tr_w(T sigma^-1(a)|D|^-1) = Tr_w(a T |D|^-1)", dix_lhs, dix_rhs,
                         1e-3 * ts, {{"N", N}}, seed);
    timer.stamp(r5);
    out.checks.push_back(r5);
  }

  // --- cocycles: tau, Cartan homotopy, Psi_1 --------------------------------
  {
    Timer timer;
    const auto tauc = tau_cochain(group);
    const auto dmod = modular_derivation();
    std::mt19937_64 rng(seed + 91);

    auto sampler = [&](int i) {
      std::mt19937_64 local(seed + 1000 + static_cast<std::uint64_t>(i));
      std::vector<CrossedProductElement> args;
      for (int j = 0; j < 3; ++j)
        args.push_back(CrossedProductElement::monomial(
            group, random_band_function(5, local(), 0.8), random_word(local)));
      return args;
    };
    const auto tau_rep = is_cyclic_cocycle<CrossedProductElement>(tauc, sampler, 20, 1e-8 * ts);
    auto r1 = make_residual_check("circ.tau.cyclic_cocycle",
                                  "tau is a cyclic cocycle (b and lambda residuals)",
                                  std::max(tau_rep.max_b_residual, tau_rep.max_lambda_residual),
                                  1e-8 * ts, {{"samples", tau_rep.samples}}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);

    // Cartan homotopy identity and its ingredients
    const auto ld = lie_derivative(tauc, dmod);
    const auto be = connes_B(contraction_e(tauc, dmod));
    const auto Et = contraction_E(tauc, dmod);
    const auto bE = hochschild_b(Et);
    double worst_cartan = 0.0, worst_E = 0.0, worst_ld_formula = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto pair = random_localized_pair(5, rng);
      const std::vector<CrossedProductElement> args{
          CrossedProductElement::monomial(group, pair.left.coeff, pair.left.word),
          CrossedProductElement::monomial(group, pair.right.coeff, pair.right.word)};
      const Complex lhs = ld(args);
      const Complex rhs = be(args) + bE(args);
      worst_cartan = std::max(worst_cartan, std::abs(lhs - rhs));
      worst_E = std::max(worst_E, std::abs(Et(std::vector<CrossedProductElement>{args[0]})));
      // closed formula for the Lie derivative on localized monomials
      if (!pair.left.word.is_identity()) {
        const CircleDiffeo& w = group->realize(pair.left.word);
        const PeriodicFunction pulled = compose(pair.right.coeff, w).fn;
        const PeriodicFunction dlog = log_derivative(w).fn.derivative();
        const Complex direct = Complex(0.0, -1.0) * (pair.left.coeff * pulled * dlog).integral();
        worst_ld_formula = std::max(worst_ld_formula, std::abs(lhs - direct));
      }
    }
    auto r2 = make_residual_check("circ.cartan.identity",
                                  "L_delta tau = B(e_delta tau) + b(E_delta tau)", worst_cartan,
                                  1e-8 * ts, {}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);
    auto r3 = make_residual_check("circ.cartan.contraction_E", "E_delta tau = 0", worst_E,
                                  1e-12 * ts, {}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);
    auto r4 = make_residual_check("circ.lie_derivative.closed_form",
                                  "L_delta tau = -i int f (g o phi) dlog phi'",
                                  worst_ld_formula, 1e-9 * ts, {}, seed);
    timer.stamp(r4);
    out.checks.push_back(r4);
  }

  {
    Timer timer;
    const int N = n_big;
    const HeatFitConfig hcfg = cfg.heat_config(N);
    std::mt19937_64 rng(seed + 101);

    double worst_closed = 0.0, worst_spectral = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      const auto pair = random_localized_pair(4, rng);
      const auto rep = theorem12_check(group, pair, N, hcfg);
      worst_closed = std::max(worst_closed, rep.closed_residual);
      worst_spectral = std::max(worst_spectral, rep.spectral_residual);
    }
    auto r1 = make_residual_check("circ.theorem12.closed",
                                  "Psi_1 = -2i tau + L_delta tau (closed forms)", worst_closed,
                                  1e-9 * ts, {}, seed);
    timer.stamp(r1);
    out.checks.push_back(r1);
    auto r2 = make_residual_check("circ.theorem12.spectral",
                                  "regularized Psi_1 matches the closed form", worst_spectral,
                                  1e-3 * ts, {{"N", N}}, seed);
    timer.stamp(r2);
    out.checks.push_back(r2);

    // localization: non-identity total words vanish
    MonomialPair off;
    off.left = {random_band_function(4, rng(), 0.8), ws};
    off.right = {random_band_function(4, rng(), 0.8), GroupWord::identity()};
    const auto off_res = psi1_spectral(group, off, N, hcfg);
    auto r3 = make_residual_check("circ.psi1.localization",
                                  "Psi_1 vanishes off the identity stratum",
                                  std::abs(off_res.value), 1e-3 * ts, {{"N", N}}, seed);
    timer.stamp(r3);
    out.checks.push_back(r3);

    // b Psi_1: closed path on a freely-cancelling triple, spectral path too
    const auto p1c = psi1_closed_cochain(group);
    const auto bp1 = hochschild_b(p1c);
    double worst_bclosed = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::mt19937_64 local(seed + 2000 + static_cast<std::uint64_t>(trial));
      const GroupWord w1 = random_word(local);
      const GroupWord w2 = random_word(local);
      const std::vector<CrossedProductElement> args{
          CrossedProductElement::monomial(group, random_band_function(4, local(), 0.8), w1),
          CrossedProductElement::monomial(group, random_band_function(4, local(), 0.8), w2),
          CrossedProductElement::monomial(group, random_band_function(4, local(), 0.8),
                                          w2.concat(w1).inverse())};
      worst_bclosed = std::max(worst_bclosed, std::abs(bp1(args)));
    }
    auto r4 = make_residual_check("circ.psi1.cocycle_closed",
                                  "b Psi_1 = 0 (closed form, cancelling words)", worst_bclosed,
                                  1e-8 * ts, {}, seed);
    timer.stamp(r4);
    out.checks.push_back(r4);

    // spectral b Psi_1 on one cancelling triple
    {
      std::mt19937_64 local(seed + 2100);
      const Monomial m0{random_band_function(4, local(), 0.8), ws};
      const Monomial m1{random_band_function(4, local(), 0.8), ws.inverse()};
      const Monomial m2{random_band_function(4, local(), 0.8), GroupWord::identity()};
      auto eval_pair = [&](const Monomial& x, const Monomial& y) {
        return psi1_spectral(group, MonomialPair{x, y}, N, hcfg).value;
      };
      auto mul = [&](const Monomial& x, const Monomial& y) {
        const auto prod = multiply(CrossedProductElement::monomial(group, x.coeff, x.word),
                                   CrossedProductElement::monomial(group, y.coeff, y.word));
        Monomial m;
        m.word = prod.terms().begin()->first;
        m.coeff = prod.terms().begin()->second;
        return m;
      };
      const Complex b_spec =
          eval_pair(mul(m0, m1), m2) - eval_pair(m0, mul(m1, m2)) + eval_pair(mul(m2, m0), m1);
      auto r5 = make_residual_check("circ.psi1.cocycle_spectral",
                                    "b Psi_1 = 0 (regularized evaluations)", std::abs(b_spec),
                                    1e-3 * ts, {{"N", N}}, seed);
      timer.stamp(r5);
      out.checks.push_back(r5);
    }

    // gauge-transformed family: m = 1 equals the closed form with the
    // sigma-weights pushed onto the coefficients
    {
      std::mt19937_64 local(seed + 2200);
      MonomialPair pair;
      pair.left = {random_band_function(4, local(), 0.8), ws};
      pair.right = {random_band_function(4, local(), 0.8), ws.inverse()};
      const auto spec = psi_gauge_m(group, pair, 1, N, hcfg);
      MonomialPair twisted = pair;
      twisted.left.coeff =
          derivative_power(group->realize(ws), Complex(1.0, 0.0)).fn * pair.left.coeff;
      twisted.right.coeff =
          derivative_power(group->realize(ws.inverse()), Complex(1.0, 0.0)).fn *
          pair.right.coeff;
      const Complex closed = psi1_closed(group, twisted);
      auto r6 = make_check("circ.psi_gauge.m1",
                           "Psi^(1) matches the closed form with twisted coefficients",
                           spec.value, closed, 1e-3 * ts, {{"N", N}}, seed);
      timer.stamp(r6);
      out.checks.push_back(r6);
    }
  }

  // --- simplicial identities over the crossed product ----------------------
  {
    Timer timer;
    auto ops = crossed_product_ops(group);
    std::mt19937_64 rng(seed + 111);
    // linear functional: the weight attached to coefficient (word, k) depends
    // only on the word content and k, never on what else the element carries
    auto random_functional = [&]() {
      const std::uint64_t s = rng();
      return [s](const CrossedProductElement& a) {
        Complex acc(0.0);
        for (const auto& [w, f] : a.terms()) {
          std::uint64_t h = s ^ 1469598103934665603ull;
          for (const auto& l : w.letters()) {
            h ^= static_cast<std::uint64_t>(2 * l.generator + (l.exponent > 0 ? 1 : 0)) + 17;
            h *= 1099511628211ull;
          }
          for (int k = -f.band(); k <= f.band(); ++k) {
            std::mt19937_64 local(h + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(k + 4096));
            std::normal_distribution<double> g;
            const double re = g(local), im = g(local);
            acc += f.coefficient(k) * Complex(re, im) /
                   (1.0 + static_cast<double>(std::abs(k)));
          }
        }
        return acc;
      };
    };
    auto random_cochain = [&](int degree) {
      std::vector<std::function<Complex(const CrossedProductElement&)>> fns;
      for (int i = 0; i <= degree; ++i) fns.push_back(random_functional());
      return Cochain<CrossedProductElement>(
          degree, ops, [fns](std::span<const CrossedProductElement> a) {
            Complex prod(1.0);
            for (std::size_t i = 0; i < a.size(); ++i) prod *= fns[i](a[i]);
            return prod;
          });
    };
    auto random_args = [&](int count) {
      std::vector<CrossedProductElement> args;
      for (int i = 0; i < count; ++i)
        args.push_back(CrossedProductElement::monomial(
            group, random_band_function(4, rng(), 0.7), random_word(rng)));
      return args;
    };
    double worst = 0.0;
    for (int degree = 1; degree <= 2; ++degree) {
      const auto psi = random_cochain(degree);
      const auto bb = hochschild_b(hochschild_b(psi));
      worst = std::max(worst, std::abs(bb(random_args(degree + 3))));
      if (degree >= 2) {
        const auto BB = connes_B(connes_B(psi));
        worst = std::max(worst, std::abs(BB(random_args(degree - 1))));
      }
      const auto anti = hochschild_b(connes_B(psi));
      const auto anti2 = connes_B(hochschild_b(psi));
      const auto args = random_args(degree + 1);
      worst = std::max(worst, std::abs(anti(args) + anti2(args)));
    }
    auto r = make_residual_check("circ.cochain.simplicial",
                                 "b^2 = 0, B^2 = 0, bB + Bb = 0 over the crossed product",
                                 worst, 1e-9 * ts, {}, seed);
    timer.stamp(r);
    out.checks.push_back(r);
  }

  return out;
}

}  // namespace sst
