#pragma once

// The algebraic crossed product C^inf(S^1) x| Gamma, with Gamma a free group
// on configured diffeomorphism generators.  Elements are finite sums
// a = sum_w a_w U*_w with band-limited coefficients; words reduce only by
// adjacent generator-inverse cancellation (numerical coincidence of distinct
// words is reported as a diagnostic, never used for identification).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sst/diffeo.hpp"

namespace sst {

struct GroupLetter {
  int generator = 0;
  int exponent = +1;  // +1 or -1
  friend auto operator<=>(const GroupLetter&, const GroupLetter&) = default;
};

class GroupWord {
 public:
  GroupWord() = default;  // identity
  static GroupWord identity() { return {}; }
  static GroupWord generator(int index, int exponent = +1);

  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  const std::vector<GroupLetter>& letters() const { return letters_; }

  // Free reduction happens on concatenation; realize(concat(v, w)) is the
  // composition realize(v) o realize(w).
  GroupWord concat(const GroupWord& rhs) const;
  GroupWord inverse() const;

  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<GroupLetter> letters_;  // leftmost letter acts outermost
};

class DiffeoGroup {
 public:
  DiffeoGroup(std::vector<std::pair<std::string, CircleDiffeo>> generators);

  int generator_count() const { return static_cast<int>(generators_.size()); }
  const CircleDiffeo& generator(int index) const;
  const CircleDiffeo& generator_inverse(int index) const;
  const std::string& generator_name(int index) const;
  int generator_index(const std::string& name) const;  // -1 if unknown

  // Memoized composition of generator realizations.
  const CircleDiffeo& realize(const GroupWord& word) const;

  std::string word_to_string(const GroupWord& word) const;  // "a.b^-1", identity "e"
  GroupWord word_from_string(const std::string& text) const;

 private:
  std::vector<std::string> names_;
  std::vector<CircleDiffeo> generators_;
  std::vector<CircleDiffeo> inverses_;
  mutable std::mutex cache_mutex_;
  mutable std::map<GroupWord, std::unique_ptr<CircleDiffeo>> cache_;
};

using DiffeoGroupPtr = std::shared_ptr<const DiffeoGroup>;

struct WordCollision {
  GroupWord a, b;
  double displacement_gap;  // sup distance between the two realizations
};

// Distinct reduced words whose realizations agree numerically.  Diagnostic
// only: the algebra keeps them as different basis labels regardless.
std::vector<WordCollision> diagnose_word_collisions(const DiffeoGroup& group,
                                                    const std::vector<GroupWord>& words,
                                                    double tol = 1e-10);

class CrossedProductElement {
 public:
  explicit CrossedProductElement(DiffeoGroupPtr group);
  static CrossedProductElement zero(DiffeoGroupPtr group);
  static CrossedProductElement scalar(DiffeoGroupPtr group, Complex value);
  static CrossedProductElement monomial(DiffeoGroupPtr group, PeriodicFunction coeff,
                                        GroupWord word = {});

  const DiffeoGroupPtr& group() const { return group_; }
  const std::map<GroupWord, PeriodicFunction>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PeriodicFunction coefficient(const GroupWord& word) const;  // zero fn if absent

  CrossedProductElement& operator+=(const CrossedProductElement& rhs);
  CrossedProductElement& operator-=(const CrossedProductElement& rhs);
  CrossedProductElement& operator*=(Complex scalar);
  friend CrossedProductElement operator+(CrossedProductElement a,
                                         const CrossedProductElement& b) {
    a += b;
    return a;
  }
  friend CrossedProductElement operator-(CrossedProductElement a,
                                         const CrossedProductElement& b) {
    a -= b;
    return a;
  }
  friend CrossedProductElement operator*(Complex s, CrossedProductElement a) {
    a *= s;
    return a;
  }

  double max_coefficient_band() const;
  double l2_norm() const;  // sqrt of summed coefficient norms

  void set_term(GroupWord word, PeriodicFunction coeff);  // prunes zero terms

 private:
  DiffeoGroupPtr group_;
  std::map<GroupWord, PeriodicFunction> terms_;
};

// (f U*_phi)(g U*_psi) = f * (g o phi) U*_{psi o phi}; bilinear extension.
CrossedProductElement multiply(const CrossedProductElement& a, const CrossedProductElement& b,
                               const CompositionOptions& opt = {});

// a* = sum_w (conj(a_w) o w^{-1}) U*_{w^{-1}}
CrossedProductElement involution(const CrossedProductElement& a,
                                 const CompositionOptions& opt = {});

// sigma^m: termwise multiplication by (phi'_w)^m, m in Z.
CrossedProductElement sigma(const CrossedProductElement& a, int power = 1,
                            const CompositionOptions& opt = {});

// Modular group sigma_t: termwise (phi'_w)^{i t}; sigma_analytic extends the
// parameter to complex z with (phi'_w)^{i z}, so sigma_analytic(a, -i) = sigma(a).
CrossedProductElement sigma_t(const CrossedProductElement& a, double t,
                              const CompositionOptions& opt = {});
CrossedProductElement sigma_analytic(const CrossedProductElement& a, Complex z,
                                     const CompositionOptions& opt = {});

// Modular derivation: delta(f U*_w) = i log(phi'_w) f U*_w.
CrossedProductElement delta(const CrossedProductElement& a,
                            const CompositionOptions& opt = {});

// Canonical state: integral of the identity-word coefficient.
Complex state(const CrossedProductElement& a);

// JSON round trip: [{"word": "a.b^-1", "coeffs": [[k, re, im], ...]}, ...]
std::string to_json(const CrossedProductElement& a);
CrossedProductElement element_from_json(DiffeoGroupPtr group, const std::string& json_text);

}  // namespace sst
