#pragma once

// Finite-dimensional graded twisted triples (H, D, gamma, sigma = Ad e^{2h}).
// Every trace identity is exact here, so the tolerances are roundoff-scale.
// Grading: H = H_+ (+) H_-, gamma = diag(I, -I), algebra elements are even
// (block diagonal), D is odd self-adjoint invertible with blocks
//   D = [[0, D_-], [D_+, 0]],  D_+ : H_+ -> H_-,  D_- = D_+^*.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sst/errors.hpp"

namespace sst {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

class MatrixTwistedTriple {
 public:
  // D odd self-adjoint invertible; h even self-adjoint; sigma = Ad(e^{2h}).
  static MatrixTwistedTriple make(Matrix D, Matrix h);
  static MatrixTwistedTriple untwisted(Matrix D);  // h = 0
  // Well-conditioned random triple (singular values of D_+ in [1/2, 3/2]).
  static MatrixTwistedTriple random(Eigen::Index half_dim, std::uint64_t seed,
                                    double h_scale = 0.5);

  Eigen::Index half_dim() const { return m_; }
  Eigen::Index dim() const { return 2 * m_; }

  const Matrix& D() const { return D_; }
  const Matrix& h() const { return h_; }
  Matrix gamma() const;
  Matrix D_plus() const { return D_.bottomLeftCorner(m_, m_); }
  Matrix D_minus() const { return D_.topRightCorner(m_, m_); }

  bool trivially_twisted(double tol = 0.0) const;  // h == 0

  Matrix exp_h(double scale) const;                  // e^{scale * h}
  Matrix sigma(const Matrix& a, double s = 1.0) const;  // e^{2sh} a e^{-2sh}
  // sigma_{it}(a) = e^{-2th} a e^{2th}: the idempotent homotopy path.
  Matrix sigma_imaginary_time(const Matrix& a, double t) const;

  Matrix d_sigma(const Matrix& a) const;  // D a - sigma(a) D

  Matrix D_inverse() const;
  Matrix abs_D() const;
  Matrix phase_F() const;          // D |D|^{-1}
  Matrix D_power_t(double t) const;  // D_t = D |D|^{-t}
  double smallest_singular_value() const;

  // Deterministic even element with O(1) entries.
  Matrix random_even_element(std::uint64_t seed) const;
  // Random even orthogonal projection with the given block ranks.
  Matrix random_even_projection(Eigen::Index rank_plus, Eigen::Index rank_minus,
                                std::uint64_t seed) const;

 private:
  MatrixTwistedTriple(Matrix D, Matrix h);
  Eigen::Index m_ = 0;
  Matrix D_, h_;
  // eigendecompositions cached for functional calculus
  Eigen::VectorXd h_eval_, D_eval_;
  Matrix h_evec_, D_evec_;
};

// Perturbed triple D' = e^h D e^h with sigma = Ad(e^{2h}); the base triple
// must carry the trivial twist.
MatrixTwistedTriple perturb(const MatrixTwistedTriple& base, const Matrix& h);
// || d'_sigma(a) - e^h [D, e^h a e^{-h}] e^h || for the perturbed triple.
double perturb_factorization_residual(const MatrixTwistedTriple& base, const Matrix& h,
                                      const Matrix& a);

// Gauge potential sum a_i (D b_i - sigma(b_i) D).
Matrix gauge_potential(const MatrixTwistedTriple& T,
                       std::span<const std::pair<Matrix, Matrix>> terms);
// Bimodule action a . omega . b = sigma(a) omega b.
Matrix bimodule_action(const MatrixTwistedTriple& T, const Matrix& a, const Matrix& omega,
                       const Matrix& b);

// Tr(gamma D^{-1} d_sigma a^0 ... D^{-1} d_sigma a^n), n even.
Complex chern_phi(const MatrixTwistedTriple& T, std::span<const Matrix> tuple,
                  int max_degree = 8);

// The two half-characters: Phi^{+-} as block traces; chern_phi = plus - minus.
std::pair<Complex, Complex> phi_pm(const MatrixTwistedTriple& T, std::span<const Matrix> tuple);

struct IdempotentData {
  enum class Tag { projection, twisted };
  Matrix e;
  Tag tag = Tag::projection;

  static IdempotentData projection(Matrix p);
  // e = e^{-h} p e^{h}: idempotent with e* = sigma(e).
  static IdempotentData twisted(const MatrixTwistedTriple& T, const Matrix& p);

  void validate(const MatrixTwistedTriple& T) const;  // e^2 = e, and e* = sigma(e) if twisted
};

struct IndexPairResult {
  long index_plus = 0;
  long index_minus = 0;
  Complex phi_plus{0.0, 0.0};
  Complex phi_minus{0.0, 0.0};
  double pairing_defect = 0.0;  // max |phi^± - index^±|
};

// f_± = D_±^{-1} sigma(e)_∓ D_±; Index^± = rank(e_±) - rank(f_±); the Chern
// evaluation Phi^±(e,..,e) with n+1 factors must reproduce the integers.
IndexPairResult index_pair(const MatrixTwistedTriple& T, const IdempotentData& e, int n);

struct PhaseReport {
  Matrix F;
  double max_identity_residual = 0.0;  // worst |[F,a] - |D|^{-1}(d_sigma a - (|D|a - sigma(a)|D|)F)|
};

PhaseReport untwist_phase(const MatrixTwistedTriple& T, std::span<const Matrix> samples);

// Tr(gamma F [F,a^0] ... [F,a^n]).
Complex chern_phi_F(const MatrixTwistedTriple& T, std::span<const Matrix> tuple);

// Phi_t with D_t = D|D|^{-t} and sigma^{1-t}: interpolates chern_phi (t = 0)
// and -chern_phi_F (t = 1).
Complex homotopy_phi_t(const MatrixTwistedTriple& T, double t, std::span<const Matrix> tuple);

struct AdjointEndpointReport {
  Complex phi0{0.0, 0.0};       // Tr prod (a_+ - D_- sigma^{-1}(a)_- D_-^{-1})
  Complex phi1{0.0, 0.0};       // Tr prod (sigma(a)_+ - D_- a_- D_-^{-1})
  Complex phi_plus_star{0.0, 0.0};
  Complex phi_minus{0.0, 0.0};
  double residual0 = 0.0;  // |phi0 - (Phi^+)^*|
  double residual1 = 0.0;  // |phi1 + Phi^-|
};

// (Phi^+)^*(a^0..a^n) := conj Phi^+(a_n^*, .., a_0^*).
Complex phi_plus_adjoint(const MatrixTwistedTriple& T, std::span<const Matrix> tuple);
AdjointEndpointReport adjoint_chern_endpoints(const MatrixTwistedTriple& T,
                                              std::span<const Matrix> tuple);

// Binary dumps (D, h) + JSON header {half_dim}.
void save_triple(const MatrixTwistedTriple& T, const std::string& path_base);
MatrixTwistedTriple load_triple(const std::string& path_base);

}  // namespace sst
