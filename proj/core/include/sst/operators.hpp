#pragma once

// Dense truncations of the circle operators to Fourier modes |k| <= N.
// Row/column index r corresponds to mode k = r - N.  "Bounded/compact up to
// truncation" statements are evaluated on the interior block |k| <= N/2; the
// outer band is treated as a truncation halo.

#include <Eigen/Dense>
#include <string>

#include "sst/crossed_product.hpp"

namespace sst {

class TruncatedOperator {
 public:
  TruncatedOperator() = default;
  TruncatedOperator(int truncation, std::string label);
  TruncatedOperator(Eigen::MatrixXcd matrix, int truncation, std::string label);

  int truncation() const { return n_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Eigen::MatrixXcd& matrix() { return matrix_; }

  Complex entry(int k, int m) const;        // mode indexing
  void set_entry(int k, int m, Complex v);

  TruncatedOperator adjoint() const;
  bool is_diagonal(double tol = 0.0) const;

  // Largest singular value (deterministic power iteration on T*T).
  double operator_norm() const;
  // Full singular spectrum, descending (dense SVD).
  Eigen::VectorXd singular_values() const;

  // Restriction to modes |k| <= half_band (default N/2).
  TruncatedOperator interior(int half_band = -1) const;

  TruncatedOperator operator*(const TruncatedOperator& rhs) const;
  TruncatedOperator operator+(const TruncatedOperator& rhs) const;
  TruncatedOperator operator-(const TruncatedOperator& rhs) const;
  friend TruncatedOperator operator*(Complex s, TruncatedOperator t) {
    t.matrix_ *= s;
    return t;
  }

 private:
  Eigen::MatrixXcd matrix_;
  int n_ = 0;
  std::string label_;
};

// diag(2 pi k): the Dirac operator (1/i) d/dx on modes e^{2 pi i k x}.
TruncatedOperator dirac(int truncation);
// diag(2 pi |k|) with the k = 0 entry patched to `zero_mode` so inverse
// powers exist; the heat semigroup below keeps the true zero eigenvalue.
TruncatedOperator abs_dirac(int truncation, double zero_mode = 1.0);
// Integer-normalized |D|: diag(|k|), k = 0 patched.  This is the reference
// spectrum for the residue functional (see spectral_traces).
TruncatedOperator abs_dirac_integer(int truncation, double zero_mode = 1.0);
// Integer-normalized Dirac diag(k) with the true zero eigenvalue; drives the
// heat semigroup the residue functional fits against.
TruncatedOperator dirac_integer(int truncation);
// diag(sign k), zero mode +1: the phase of the Dirac operator.
TruncatedOperator dirac_phase(int truncation);
// Inverse of a diagonal operator (throws SingularDError on a zero entry).
TruncatedOperator inverse_diagonal(const TruncatedOperator& d);

struct RepresentOptions {
  std::size_t grid = 0;       // 0: automatic (>= grid_size_for(N), covering spread)
  double leakage_bound = 0.5; // AliasingError if max column leakage exceeds this
};

struct RepresentResult {
  TruncatedOperator op;
  double max_leakage = 0.0;  // worst column tail-energy ratio beyond mode N
};

// pi(a): xi -> sum_w a_w phi_w'^{1/2} (xi o phi_w), built column by column on
// an oversampled grid and projected back to modes |k| <= N.
RepresentResult represent_with_leakage(const CrossedProductElement& a, int truncation,
                                       const RepresentOptions& opt = {});
TruncatedOperator represent(const CrossedProductElement& a, int truncation,
                            const RepresentOptions& opt = {});

// Composition operator C_chi: xi -> xi o chi  (this is V_chi^{-1}).
TruncatedOperator composition_operator(const CircleDiffeo& chi, int truncation,
                                       const RepresentOptions& opt = {});
// Translation V_w: xi -> xi o phi_w^{-1}, no density factor.
TruncatedOperator translation(const DiffeoGroup& group, const GroupWord& word, int truncation,
                              const RepresentOptions& opt = {});

// D pi(a) - pi(sigma(a)) D.
TruncatedOperator twisted_commutator(const TruncatedOperator& D, const CrossedProductElement& a,
                                     int truncation, const RepresentOptions& opt = {});

// e^{-t D^2} for diagonal D; TruncationError when e^{-t lambda_max^2} > 1e-16.
TruncatedOperator heat(const TruncatedOperator& D, double t);

// Least-squares slope alpha of log s_j vs log j over j in [N/8, N/2]
// (singular values s_j ~ j^{-alpha}).
double summability_exponent(const TruncatedOperator& T);

// diag(A * B) without forming the product.
Eigen::VectorXcd diagonal_of_product(const TruncatedOperator& A, const TruncatedOperator& B);

// Binary dump (row-major re,im little-endian doubles) + JSON header {N, label}.
void save_operator(const TruncatedOperator& op, const std::string& path_base);
TruncatedOperator load_operator(const std::string& path_base);

}  // namespace sst
