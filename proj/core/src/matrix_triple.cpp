#include "sst/matrix_triple.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

namespace sst {

namespace {

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = Complex(g(rng), g(rng));
  return out;
}

Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix a = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  // fix phases so the factorization is unique-ish (determinism only needs
  // the rng draw order, but keep Q well defined)
  return q;
}

long rank_by_svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double thresh = 1e-9 * s(0);
  long r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return r;
}

}  // namespace

MatrixTwistedTriple::MatrixTwistedTriple(Matrix D, Matrix h)
    : m_(D.rows() / 2), D_(std::move(D)), h_(std::move(h)) {
  Eigen::SelfAdjointEigenSolver<Matrix> hs(h_);
  h_eval_ = hs.eigenvalues();
  h_evec_ = hs.eigenvectors();
  Eigen::SelfAdjointEigenSolver<Matrix> ds(D_);
  D_eval_ = ds.eigenvalues();
  D_evec_ = ds.eigenvectors();
}

MatrixTwistedTriple MatrixTwistedTriple::make(Matrix D, Matrix h) {
  if (D.rows() != D.cols() || D.rows() % 2 != 0)
    throw GradingError("MatrixTwistedTriple: dimension must be even");
  const Eigen::Index m = D.rows() / 2;
  if (h.rows() != D.rows() || h.cols() != D.cols())
    throw GradingError("MatrixTwistedTriple: h dimension mismatch");
  const double scale = std::max(1.0, D.norm());
  if ((D - D.adjoint()).norm() > 1e-12 * scale)
    throw NotSelfAdjointError("MatrixTwistedTriple: D is not self-adjoint");
  if ((h - h.adjoint()).norm() > 1e-12 * std::max(1.0, h.norm()))
    throw NotSelfAdjointError("MatrixTwistedTriple: h is not self-adjoint");
  if (D.topLeftCorner(m, m).norm() > 1e-13 * scale ||
      D.bottomRightCorner(m, m).norm() > 1e-13 * scale)
    throw GradingError("MatrixTwistedTriple: D must anticommute with gamma");
  if (h.topRightCorner(m, m).norm() > 1e-13 * std::max(1.0, h.norm()) ||
      h.bottomLeftCorner(m, m).norm() > 1e-13 * std::max(1.0, h.norm()))
    throw GradingError("MatrixTwistedTriple: h must be even");

  MatrixTwistedTriple T(std::move(D), std::move(h));
  if (T.smallest_singular_value() <= 0.0)
    throw SingularDError("MatrixTwistedTriple: D is singular");
  return T;
}

MatrixTwistedTriple MatrixTwistedTriple::untwisted(Matrix D) {
  const Eigen::Index n = D.rows();
  return make(std::move(D), Matrix::Zero(n, n));
}

MatrixTwistedTriple MatrixTwistedTriple::random(Eigen::Index half_dim, std::uint64_t seed,
                                                double h_scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  const Matrix q1 = random_unitary(half_dim, rng);
  const Matrix q2 = random_unitary(half_dim, rng);
  Eigen::VectorXd s(half_dim);
  for (Eigen::Index i = 0; i < half_dim; ++i) s(i) = u(rng);
  const Matrix dplus = q1 * s.asDiagonal() * q2.adjoint();

  Matrix D = Matrix::Zero(2 * half_dim, 2 * half_dim);
  D.bottomLeftCorner(half_dim, half_dim) = dplus;
  D.topRightCorner(half_dim, half_dim) = dplus.adjoint();

  Matrix h = Matrix::Zero(2 * half_dim, 2 * half_dim);
  const Matrix gp = random_gaussian(half_dim, half_dim, rng);
  const Matrix gm = random_gaussian(half_dim, half_dim, rng);
  h.topLeftCorner(half_dim, half_dim) = 0.5 * h_scale * (gp + gp.adjoint());
  h.bottomRightCorner(half_dim, half_dim) = 0.5 * h_scale * (gm + gm.adjoint());
  return make(std::move(D), std::move(h));
}

Matrix MatrixTwistedTriple::gamma() const {
  Matrix g = Matrix::Zero(2 * m_, 2 * m_);
  g.topLeftCorner(m_, m_) = Matrix::Identity(m_, m_);
  g.bottomRightCorner(m_, m_) = -Matrix::Identity(m_, m_);
  return g;
}

bool MatrixTwistedTriple::trivially_twisted(double tol) const { return h_.norm() <= tol; }

Matrix MatrixTwistedTriple::exp_h(double scale) const {
  Eigen::VectorXcd e(h_eval_.size());
  for (Eigen::Index i = 0; i < h_eval_.size(); ++i)
    e(i) = Complex(std::exp(scale * h_eval_(i)), 0.0);
  return h_evec_ * e.asDiagonal() * h_evec_.adjoint();
}

Matrix MatrixTwistedTriple::sigma(const Matrix& a, double s) const {
  if (trivially_twisted(0.0)) return a;
  return exp_h(2.0 * s) * a * exp_h(-2.0 * s);
}

Matrix MatrixTwistedTriple::sigma_imaginary_time(const Matrix& a, double t) const {
  return exp_h(-2.0 * t) * a * exp_h(2.0 * t);
}

Matrix MatrixTwistedTriple::d_sigma(const Matrix& a) const { return D_ * a - sigma(a) * D_; }

Matrix MatrixTwistedTriple::D_inverse() const {
  Eigen::VectorXcd e(D_eval_.size());
  for (Eigen::Index i = 0; i < D_eval_.size(); ++i) e(i) = Complex(1.0 / D_eval_(i), 0.0);
  return D_evec_ * e.asDiagonal() * D_evec_.adjoint();
}

Matrix MatrixTwistedTriple::abs_D() const {
  Eigen::VectorXcd e(D_eval_.size());
  for (Eigen::Index i = 0; i < D_eval_.size(); ++i)
    e(i) = Complex(std::abs(D_eval_(i)), 0.0);
  return D_evec_ * e.asDiagonal() * D_evec_.adjoint();
}

Matrix MatrixTwistedTriple::phase_F() const {
  Eigen::VectorXcd e(D_eval_.size());
  for (Eigen::Index i = 0; i < D_eval_.size(); ++i)
    e(i) = Complex(D_eval_(i) >= 0.0 ? 1.0 : -1.0, 0.0);
  return D_evec_ * e.asDiagonal() * D_evec_.adjoint();
}

Matrix MatrixTwistedTriple::D_power_t(double t) const {
  Eigen::VectorXcd e(D_eval_.size());
  for (Eigen::Index i = 0; i < D_eval_.size(); ++i) {
    const double lam = D_eval_(i);
    e(i) = Complex(lam * std::pow(std::abs(lam), -t), 0.0);
  }
  return D_evec_ * e.asDiagonal() * D_evec_.adjoint();
}

double MatrixTwistedTriple::smallest_singular_value() const {
  double s = std::abs(D_eval_(0));
  for (Eigen::Index i = 1; i < D_eval_.size(); ++i) s = std::min(s, std::abs(D_eval_(i)));
  return s;
}

Matrix MatrixTwistedTriple::random_even_element(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  Matrix a = Matrix::Zero(2 * m_, 2 * m_);
  a.topLeftCorner(m_, m_) = random_gaussian(m_, m_, rng) / std::sqrt(static_cast<double>(m_));
  a.bottomRightCorner(m_, m_) =
      random_gaussian(m_, m_, rng) / std::sqrt(static_cast<double>(m_));
  return a;
}

Matrix MatrixTwistedTriple::random_even_projection(Eigen::Index rank_plus,
                                                   Eigen::Index rank_minus,
                                                   std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  Matrix p = Matrix::Zero(2 * m_, 2 * m_);
  const Matrix up = random_unitary(m_, rng);
  const Matrix um = random_unitary(m_, rng);
  Matrix dp = Matrix::Zero(m_, m_), dm = Matrix::Zero(m_, m_);
  for (Eigen::Index i = 0; i < rank_plus; ++i) dp(i, i) = 1.0;
  for (Eigen::Index i = 0; i < rank_minus; ++i) dm(i, i) = 1.0;
  p.topLeftCorner(m_, m_) = up * dp * up.adjoint();
  p.bottomRightCorner(m_, m_) = um * dm * um.adjoint();
  return p;
}

MatrixTwistedTriple perturb(const MatrixTwistedTriple& base, const Matrix& h) {
  if (!base.trivially_twisted(1e-14))
    throw Error("perturb: base triple must carry the trivial twist");
  if ((h - h.adjoint()).norm() > 1e-12 * std::max(1.0, h.norm()))
    throw NotSelfAdjointError("perturb: h must be self-adjoint");
  const Eigen::Index m = base.half_dim();
  if (h.topRightCorner(m, m).norm() > 1e-13 * std::max(1.0, h.norm()) ||
      h.bottomLeftCorner(m, m).norm() > 1e-13 * std::max(1.0, h.norm()))
    throw GradingError("perturb: h must be even");

  Eigen::SelfAdjointEigenSolver<Matrix> hs(h);
  Eigen::VectorXcd e(hs.eigenvalues().size());
  for (Eigen::Index i = 0; i < e.size(); ++i)
    e(i) = Complex(std::exp(hs.eigenvalues()(i)), 0.0);
  const Matrix eh = hs.eigenvectors() * e.asDiagonal() * hs.eigenvectors().adjoint();
  return MatrixTwistedTriple::make(eh * base.D() * eh, h);
}

double perturb_factorization_residual(const MatrixTwistedTriple& base, const Matrix& h,
                                      const Matrix& a) {
  const MatrixTwistedTriple pert = perturb(base, h);
  const Matrix lhs = pert.d_sigma(a);
  const Matrix eh = pert.exp_h(1.0);
  const Matrix ehm = pert.exp_h(-1.0);
  const Matrix b = eh * a * ehm;
  const Matrix rhs = eh * (base.D() * b - b * base.D()) * eh;
  return (lhs - rhs).norm();
}

Matrix gauge_potential(const MatrixTwistedTriple& T,
                       std::span<const std::pair<Matrix, Matrix>> terms) {
  Matrix out = Matrix::Zero(T.dim(), T.dim());
  for (const auto& [a, b] : terms) out += a * T.d_sigma(b);
  return out;
}

Matrix bimodule_action(const MatrixTwistedTriple& T, const Matrix& a, const Matrix& omega,
                       const Matrix& b) {
  return T.sigma(a) * omega * b;
}

Complex chern_phi(const MatrixTwistedTriple& T, std::span<const Matrix> tuple,
                  int max_degree) {
  const int n = static_cast<int>(tuple.size()) - 1;
  if (n < 0 || n % 2 != 0 || n > max_degree)
    throw DegreeMismatchError("chern_phi: need an odd tuple length (even degree <= max)");
  if (T.smallest_singular_value() <= 0.0) throw SingularDError("chern_phi: D singular");
  const Matrix Dinv = T.D_inverse();
  Matrix prod = Matrix::Identity(T.dim(), T.dim());
  for (const auto& a : tuple) prod = prod * (Dinv * T.d_sigma(a));
  return (T.gamma() * prod).trace();
}

std::pair<Complex, Complex> phi_pm(const MatrixTwistedTriple& T, std::span<const Matrix> tuple) {
  const int n = static_cast<int>(tuple.size()) - 1;
  if (n < 0 || n % 2 != 0)
    throw DegreeMismatchError("phi_pm: need an odd tuple length (even degree)");
  const Eigen::Index m = T.half_dim();
  const Matrix dp = T.D_plus();
  const Matrix dm = T.D_minus();
  const Matrix dp_inv = dp.partialPivLu().inverse();
  const Matrix dm_inv = dm.partialPivLu().inverse();

  Matrix prod_p = Matrix::Identity(m, m);
  Matrix prod_m = Matrix::Identity(m, m);
  for (const auto& a : tuple) {
    const Matrix sa = T.sigma(a);
    const Matrix ap = a.topLeftCorner(m, m), am = a.bottomRightCorner(m, m);
    const Matrix sap = sa.topLeftCorner(m, m), sam = sa.bottomRightCorner(m, m);
    prod_p = prod_p * (dp_inv * (dp * ap - sam * dp));
    prod_m = prod_m * (dm_inv * (dm * am - sap * dm));
  }
  return {prod_p.trace(), prod_m.trace()};
}

IdempotentData IdempotentData::projection(Matrix p) {
  IdempotentData d;
  d.e = std::move(p);
  d.tag = Tag::projection;
  return d;
}

IdempotentData IdempotentData::twisted(const MatrixTwistedTriple& T, const Matrix& p) {
  IdempotentData d;
  d.e = T.exp_h(-1.0) * p * T.exp_h(1.0);
  d.tag = Tag::twisted;
  return d;
}

void IdempotentData::validate(const MatrixTwistedTriple& T) const {
  if ((e * e - e).norm() >= 1e-12 * std::max(1.0, e.norm() * e.norm()))
    throw NotIdempotentError("IdempotentData: e^2 != e");
  if (tag == Tag::twisted) {
    if ((e.adjoint() - T.sigma(e)).norm() >= 1e-11 * std::max(1.0, e.norm()))
      throw NotIdempotentError("IdempotentData: e* != sigma(e) for twisted tag");
  }
}

IndexPairResult index_pair(const MatrixTwistedTriple& T, const IdempotentData& e, int n) {
  if ((e.e * e.e - e.e).norm() >= 1e-10 * std::max(1.0, e.e.norm() * e.e.norm()))
    throw NotIdempotentError("index_pair: e^2 != e");
  if (n < 0 || n % 2 != 0) throw DegreeMismatchError("index_pair: n must be even");

  const Eigen::Index m = T.half_dim();
  const Matrix se = T.sigma(e.e);
  const Matrix dp = T.D_plus(), dm = T.D_minus();
  const Matrix f_plus = dp.partialPivLu().solve(se.bottomRightCorner(m, m) * dp);
  const Matrix f_minus = dm.partialPivLu().solve(se.topLeftCorner(m, m) * dm);

  IndexPairResult res;
  res.index_plus = rank_by_svd(e.e.topLeftCorner(m, m)) - rank_by_svd(f_plus);
  res.index_minus = rank_by_svd(e.e.bottomRightCorner(m, m)) - rank_by_svd(f_minus);

  std::vector<Matrix> tuple(static_cast<std::size_t>(n) + 1, e.e);
  const auto [pp, pm] = phi_pm(T, tuple);
  res.phi_plus = pp;
  res.phi_minus = pm;
  res.pairing_defect =
      std::max(std::abs(pp - Complex(static_cast<double>(res.index_plus), 0.0)),
               std::abs(pm - Complex(static_cast<double>(res.index_minus), 0.0)));
  return res;
}

PhaseReport untwist_phase(const MatrixTwistedTriple& T, std::span<const Matrix> samples) {
  PhaseReport rep;
  rep.F = T.phase_F();
  const Matrix abs_d = T.abs_D();
  const Matrix abs_inv = abs_d.partialPivLu().inverse();
  for (const auto& a : samples) {
    const Matrix lhs = rep.F * a - a * rep.F;
    const Matrix rhs =
        abs_inv * (T.d_sigma(a) - (abs_d * a - T.sigma(a) * abs_d) * rep.F);
    rep.max_identity_residual = std::max(rep.max_identity_residual, (lhs - rhs).norm());
  }
  return rep;
}

Complex chern_phi_F(const MatrixTwistedTriple& T, std::span<const Matrix> tuple) {
  const Matrix F = T.phase_F();
  Matrix prod = T.gamma() * F;
  for (const auto& a : tuple) prod = prod * (F * a - a * F);
  return prod.trace();
}

Complex homotopy_phi_t(const MatrixTwistedTriple& T, double t, std::span<const Matrix> tuple) {
  const int n = static_cast<int>(tuple.size()) - 1;
  if (n < 0 || n % 2 != 0)
    throw DegreeMismatchError("homotopy_phi_t: need an odd tuple length");
  const Matrix Dt = T.D_power_t(t);
  const Matrix Dt_inv = Dt.partialPivLu().inverse();
  Matrix prod = Matrix::Identity(T.dim(), T.dim());
  for (const auto& a : tuple) {
    prod = prod * (Dt_inv * (Dt * a - T.sigma(a, 1.0 - t) * Dt));
  }
  return (T.gamma() * prod).trace();
}

Complex phi_plus_adjoint(const MatrixTwistedTriple& T, std::span<const Matrix> tuple) {
  std::vector<Matrix> rev;
  rev.reserve(tuple.size());
  for (auto it = tuple.rbegin(); it != tuple.rend(); ++it) rev.push_back(it->adjoint());
  const auto [pp, pm] = phi_pm(T, rev);
  (void)pm;
  return std::conj(pp);
}

AdjointEndpointReport adjoint_chern_endpoints(const MatrixTwistedTriple& T,
                                              std::span<const Matrix> tuple) {
  const Eigen::Index m = T.half_dim();
  const Matrix dm = T.D_minus();
  const Matrix dm_inv = dm.partialPivLu().inverse();

  Matrix prod0 = Matrix::Identity(m, m);
  Matrix prod1 = Matrix::Identity(m, m);
  for (const auto& a : tuple) {
    const Matrix sinv = T.sigma(a, -1.0);
    const Matrix s1 = T.sigma(a, 1.0);
    prod0 = prod0 * (a.topLeftCorner(m, m) - dm * sinv.bottomRightCorner(m, m) * dm_inv);
    prod1 = prod1 * (s1.topLeftCorner(m, m) - dm * a.bottomRightCorner(m, m) * dm_inv);
  }

  AdjointEndpointReport rep;
  rep.phi0 = prod0.trace();
  rep.phi1 = prod1.trace();
  rep.phi_plus_star = phi_plus_adjoint(T, tuple);
  const auto [pp, pm] = phi_pm(T, tuple);
  (void)pp;
  rep.phi_minus = pm;
  rep.residual0 = std::abs(rep.phi0 - rep.phi_plus_star);
  rep.residual1 = std::abs(rep.phi1 + rep.phi_minus);
  return rep;
}

void save_triple(const MatrixTwistedTriple& T, const std::string& path_base) {
  nlohmann::json header{{"half_dim", T.half_dim()}};
  std::ofstream jh(path_base + ".json");
  if (!jh) throw Error("save_triple: cannot open " + path_base + ".json");
  jh << header.dump(2) << '\n';

  auto dump = [&](const Matrix& mat, const std::string& path) {
    std::ofstream bin(path, std::ios::binary);
    if (!bin) throw Error("save_triple: cannot open " + path);
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) {
        const double re = mat(i, j).real(), im = mat(i, j).imag();
        bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
        bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
      }
    }
  };
  dump(T.D(), path_base + ".D.bin");
  dump(T.h(), path_base + ".h.bin");
}

MatrixTwistedTriple load_triple(const std::string& path_base) {
  std::ifstream jh(path_base + ".json");
  if (!jh) throw Error("load_triple: cannot open " + path_base + ".json");
  nlohmann::json header = nlohmann::json::parse(jh);
  const Eigen::Index m = header.at("half_dim").get<Eigen::Index>();

  auto slurp = [&](const std::string& path) {
    Matrix mat(2 * m, 2 * m);
    std::ifstream bin(path, std::ios::binary);
    if (!bin) throw Error("load_triple: cannot open " + path);
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
      for (Eigen::Index j = 0; j < mat.cols(); ++j) {
        double re = 0.0, im = 0.0;
        bin.read(reinterpret_cast<char*>(&re), sizeof(double));
        bin.read(reinterpret_cast<char*>(&im), sizeof(double));
        mat(i, j) = Complex(re, im);
      }
    }
    if (!bin) throw Error("load_triple: binary dump truncated");
    return mat;
  };
  return MatrixTwistedTriple::make(slurp(path_base + ".D.bin"), slurp(path_base + ".h.bin"));
}

}  // namespace sst
