#include "sst/operators.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

namespace sst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TruncatedOperator::TruncatedOperator(int truncation, std::string label)
    : matrix_(Eigen::MatrixXcd::Zero(2 * truncation + 1, 2 * truncation + 1)),
      n_(truncation),
      label_(std::move(label)) {}

TruncatedOperator::TruncatedOperator(Eigen::MatrixXcd matrix, int truncation, std::string label)
    : matrix_(std::move(matrix)), n_(truncation), label_(std::move(label)) {
  if (matrix_.rows() != 2 * n_ + 1 || matrix_.cols() != 2 * n_ + 1)
    throw Error("TruncatedOperator: matrix size does not match truncation");
}

Complex TruncatedOperator::entry(int k, int m) const { return matrix_(k + n_, m + n_); }

void TruncatedOperator::set_entry(int k, int m, Complex v) { matrix_(k + n_, m + n_) = v; }

TruncatedOperator TruncatedOperator::adjoint() const {
  return {matrix_.adjoint(), n_, label_ + "*"};
}

bool TruncatedOperator::is_diagonal(double tol) const {
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
      if (i != j && std::abs(matrix_(i, j)) > tol) return false;
    }
  }
  return true;
}

double TruncatedOperator::operator_norm() const {
  const Eigen::Index n = matrix_.rows();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(24301);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double prev = -1.0;
  for (int it = 0; it < 20000; ++it) {
    const Eigen::VectorXcd w = matrix_ * v;
    const double est = w.norm();  // |T v| with unit v, -> sigma_max from below
    if (est == 0.0) return 0.0;
    v = matrix_.adjoint() * w;
    const double nv = v.norm();
    if (nv == 0.0) return est;
    v /= nv;
    if (it > 2 && std::abs(est - prev) <= 1e-13 * std::max(est, 1e-300)) return est;
    prev = est;
  }
  return prev;
}

Eigen::VectorXd TruncatedOperator::singular_values() const {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix_);
  return svd.singularValues();
}

TruncatedOperator TruncatedOperator::interior(int half_band) const {
  if (half_band < 0) half_band = n_ / 2;
  if (half_band > n_) throw Error("interior: half_band exceeds truncation");
  const Eigen::Index d = 2 * half_band + 1;
  const Eigen::Index off = n_ - half_band;
  return {matrix_.block(off, off, d, d), half_band, label_ + "|int"};
}

TruncatedOperator TruncatedOperator::operator*(const TruncatedOperator& rhs) const {
  if (n_ != rhs.n_) throw Error("operator*: truncation mismatch");
  return {matrix_ * rhs.matrix_, n_, label_ + "*" + rhs.label_};
}

TruncatedOperator TruncatedOperator::operator+(const TruncatedOperator& rhs) const {
  if (n_ != rhs.n_) throw Error("operator+: truncation mismatch");
  return {matrix_ + rhs.matrix_, n_, label_};
}

TruncatedOperator TruncatedOperator::operator-(const TruncatedOperator& rhs) const {
  if (n_ != rhs.n_) throw Error("operator-: truncation mismatch");
  return {matrix_ - rhs.matrix_, n_, label_};
}

TruncatedOperator dirac(int truncation) {
  TruncatedOperator d(truncation, "dirac");
  for (int k = -truncation; k <= truncation; ++k) d.set_entry(k, k, Complex(kTwoPi * k, 0.0));
  return d;
}

TruncatedOperator abs_dirac(int truncation, double zero_mode) {
  TruncatedOperator d(truncation, "abs_dirac");
  for (int k = -truncation; k <= truncation; ++k)
    d.set_entry(k, k, Complex(k == 0 ? zero_mode : kTwoPi * std::abs(k), 0.0));
  return d;
}

TruncatedOperator abs_dirac_integer(int truncation, double zero_mode) {
  TruncatedOperator d(truncation, "abs_dirac_int");
  for (int k = -truncation; k <= truncation; ++k)
    d.set_entry(k, k, Complex(k == 0 ? zero_mode : std::abs(k), 0.0));
  return d;
}

TruncatedOperator dirac_integer(int truncation) {
  TruncatedOperator d(truncation, "dirac_int");
  for (int k = -truncation; k <= truncation; ++k)
    d.set_entry(k, k, Complex(static_cast<double>(k), 0.0));
  return d;
}

TruncatedOperator dirac_phase(int truncation) {
  TruncatedOperator d(truncation, "phase");
  for (int k = -truncation; k <= truncation; ++k)
    d.set_entry(k, k, Complex(k < 0 ? -1.0 : 1.0, 0.0));
  return d;
}

TruncatedOperator inverse_diagonal(const TruncatedOperator& d) {
  if (!d.is_diagonal(0.0)) throw Error("inverse_diagonal: operator is not diagonal");
  TruncatedOperator out(d.truncation(), d.label() + "^-1");
  for (int k = -d.truncation(); k <= d.truncation(); ++k) {
    const Complex v = d.entry(k, k);
    if (v == Complex(0.0)) throw SingularDError("inverse_diagonal: zero eigenvalue");
    out.set_entry(k, k, 1.0 / v);
  }
  return out;
}

namespace {

std::size_t pick_grid(const CrossedProductElement& a, int truncation,
                      const RepresentOptions& opt) {
  if (opt.grid != 0) return opt.grid;
  // highest column picks up spread ~ N * 2 pi sup|p_osc| on top of the
  // coefficient band; the grid must cover mode N plus that content
  double spread = 0.0;
  for (const auto& [w, f] : a.terms()) {
    PeriodicFunction osc = a.group()->realize(w).displacement();
    osc -= PeriodicFunction::constant(osc.coefficient(0));
    spread = std::max(spread, kTwoPi * osc.sup_norm() * truncation + f.band());
  }
  const std::size_t need = 2 * (static_cast<std::size_t>(truncation + spread) + 64);
  std::size_t g = grid_size_for(truncation);
  while (g < need) g <<= 1;
  return g;
}

// Accumulate the matrix of xi -> weight * (xi o phi) into M.
void accumulate_composition(Eigen::MatrixXcd& M, double& max_leakage,
                            const std::vector<Complex>& weight, const CircleDiffeo& phi,
                            int truncation) {
  const std::size_t g = weight.size();
  std::vector<double> ph(g);
  for (std::size_t j = 0; j < g; ++j)
    ph[j] = phi.lift(static_cast<double>(j) / static_cast<double>(g));

  std::vector<Complex> col(g);
  const int gi = static_cast<int>(g);
  const double gd = static_cast<double>(g);
  for (int m = -truncation; m <= truncation; ++m) {
    for (std::size_t j = 0; j < g; ++j)
      col[j] = weight[j] * std::polar(1.0, kTwoPi * m * ph[j]);
    fft::transform(col, /*inverse=*/false);
    double total = 0.0, kept = 0.0;
    for (std::size_t j = 0; j < g; ++j) total += std::norm(col[j] / gd);
    for (int k = -truncation; k <= truncation; ++k) {
      const Complex c = col[static_cast<std::size_t>((k % gi + gi) % gi)] / gd;
      kept += std::norm(c);
      M(k + truncation, m + truncation) += c;
    }
    if (total > 0.0)
      max_leakage = std::max(max_leakage, std::max(0.0, (total - kept) / total));
  }
}

}  // namespace

RepresentResult represent_with_leakage(const CrossedProductElement& a, int truncation,
                                       const RepresentOptions& opt) {
  RepresentResult res;
  res.op = TruncatedOperator(truncation, "pi(a)");
  const std::size_t g = pick_grid(a, truncation, opt);
  for (const auto& [w, f] : a.terms()) {
    const CircleDiffeo& phi = a.group()->realize(w);
    auto fx = f.sample(g);
    std::vector<Complex> weight(g);
    for (std::size_t j = 0; j < g; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(g);
      weight[j] = fx[j] * std::sqrt(phi.derivative(x));
    }
    accumulate_composition(res.op.matrix(), res.max_leakage, weight, phi, truncation);
  }
  if (res.max_leakage > opt.leakage_bound)
    throw AliasingError("represent: column leakage " + std::to_string(res.max_leakage) +
                        " exceeds bound");
  return res;
}

TruncatedOperator represent(const CrossedProductElement& a, int truncation,
                            const RepresentOptions& opt) {
  return represent_with_leakage(a, truncation, opt).op;
}

TruncatedOperator composition_operator(const CircleDiffeo& chi, int truncation,
                                       const RepresentOptions& opt) {
  std::size_t g = opt.grid;
  if (g == 0) {
    PeriodicFunction osc = chi.displacement();
    osc -= PeriodicFunction::constant(osc.coefficient(0));
    const double spread = kTwoPi * osc.sup_norm() * truncation;
    const std::size_t need = 2 * (static_cast<std::size_t>(truncation + spread) + 64);
    g = grid_size_for(truncation);
    while (g < need) g <<= 1;
  }
  TruncatedOperator out(truncation, "C_chi");
  double leakage = 0.0;
  std::vector<Complex> weight(g, Complex(1.0));
  accumulate_composition(out.matrix(), leakage, weight, chi, truncation);
  if (leakage > opt.leakage_bound)
    throw AliasingError("composition_operator: column leakage exceeds bound");
  return out;
}

TruncatedOperator translation(const DiffeoGroup& group, const GroupWord& word, int truncation,
                              const RepresentOptions& opt) {
  const CircleDiffeo& inv = group.realize(word.inverse());
  TruncatedOperator t = composition_operator(inv, truncation, opt);
  t.set_label("V_w");
  return t;
}

TruncatedOperator twisted_commutator(const TruncatedOperator& D, const CrossedProductElement& a,
                                     int truncation, const RepresentOptions& opt) {
  const TruncatedOperator pa = represent(a, truncation, opt);
  const TruncatedOperator psa = represent(sigma(a), truncation, opt);
  TruncatedOperator out = D * pa - psa * D;
  out.set_label("d_sigma(a)");
  return out;
}

TruncatedOperator heat(const TruncatedOperator& D, double t) {
  if (!D.is_diagonal(0.0)) throw Error("heat: D must be diagonal");
  if (t <= 0.0) throw TruncationError("heat: t must be positive");
  double lam_max = 0.0;
  for (int k = -D.truncation(); k <= D.truncation(); ++k)
    lam_max = std::max(lam_max, std::abs(D.entry(k, k)));
  if (std::exp(-t * lam_max * lam_max) > 1e-16)
    throw TruncationError("heat: t too small for this truncation");
  TruncatedOperator out(D.truncation(), "heat");
  for (int k = -D.truncation(); k <= D.truncation(); ++k) {
    const double lam = D.entry(k, k).real();
    out.set_entry(k, k, Complex(std::exp(-t * lam * lam), 0.0));
  }
  return out;
}

double summability_exponent(const TruncatedOperator& T) {
  const Eigen::VectorXd sv = T.singular_values();
  const int N = T.truncation();
  const int lo = std::max(1, N / 8), hi = std::max(lo + 7, N / 2);
  int nonzero = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-300) ++nonzero;
  if (nonzero < 8)
    throw DegenerateSpectrumError("summability_exponent: fewer than 8 nonzero singular values");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int j = lo; j <= hi && j <= static_cast<int>(sv.size()); ++j) {
    const double s = sv(j - 1);
    if (s <= 1e-300) break;
    const double x = std::log(static_cast<double>(j)), y = std::log(s);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 8)
    throw DegenerateSpectrumError("summability_exponent: not enough spectrum in fit range");
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return -slope;
}

Eigen::VectorXcd diagonal_of_product(const TruncatedOperator& A, const TruncatedOperator& B) {
  if (A.truncation() != B.truncation())
    throw Error("diagonal_of_product: truncation mismatch");
  const Eigen::Index n = A.dim();
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = A.matrix().row(i) * B.matrix().col(i);
  return d;
}

void save_operator(const TruncatedOperator& op, const std::string& path_base) {
  nlohmann::json header{{"N", op.truncation()}, {"label", op.label()}};
  std::ofstream jh(path_base + ".json");
  if (!jh) throw Error("save_operator: cannot open " + path_base + ".json");
  jh << header.dump(2) << '\n';

  std::ofstream bin(path_base + ".bin", std::ios::binary);
  if (!bin) throw Error("save_operator: cannot open " + path_base + ".bin");
  const auto& m = op.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real(), im = m(i, j).imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
      bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
}

TruncatedOperator load_operator(const std::string& path_base) {
  std::ifstream jh(path_base + ".json");
  if (!jh) throw Error("load_operator: cannot open " + path_base + ".json");
  nlohmann::json header = nlohmann::json::parse(jh);
  const int N = header.at("N").get<int>();
  TruncatedOperator op(N, header.at("label").get<std::string>());

  std::ifstream bin(path_base + ".bin", std::ios::binary);
  if (!bin) throw Error("load_operator: cannot open " + path_base + ".bin");
  auto& m = op.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double re = 0.0, im = 0.0;
      bin.read(reinterpret_cast<char*>(&re), sizeof(double));
      bin.read(reinterpret_cast<char*>(&im), sizeof(double));
      m(i, j) = Complex(re, im);
    }
  }
  if (!bin) throw Error("load_operator: binary dump truncated");
  return op;
}

}  // namespace sst
