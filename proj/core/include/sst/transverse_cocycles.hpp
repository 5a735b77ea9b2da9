#pragma once

// The concrete cocycles on C^inf(S^1) x| Gamma: the transverse fundamental
// cocycle tau, the local cocycle Psi_1 in both its closed form and its
// regularized spectral form, the sigma-gauge family Psi^{(m)}, and the
// cross-checks tying them together (Psi_1 = -2i tau + L_delta tau).

#include "sst/cochain.hpp"
#include "sst/cochain_ops.hpp"
#include "sst/spectral_traces.hpp"

namespace sst {

struct Monomial {
  PeriodicFunction coeff;
  GroupWord word;
};

struct MonomialPair {
  Monomial left;   // f U*_w
  Monomial right;  // g U*_v
  // localized: the concatenated word v.w reduces to the identity, so the
  // product sits over the identity stratum where the closed forms hold
  bool localized() const { return right.word.concat(left.word).is_identity(); }
  GroupWord total_word() const { return right.word.concat(left.word); }
};

// tau(a, b) = sum_w integral( a_w * d(b_{w^-1} o phi_w) ); kills all word
// pairs that do not cancel freely.
Complex tau(const DiffeoGroupPtr& group, const CrossedProductElement& a,
            const CrossedProductElement& b, const CompositionOptions& opt = {});
Complex tau(const DiffeoGroupPtr& group, const MonomialPair& pair,
            const CompositionOptions& opt = {});

Cochain<CrossedProductElement> tau_cochain(DiffeoGroupPtr group,
                                           const CompositionOptions& opt = {});

// The modular derivation delta as a Derivation handle.
Derivation<CrossedProductElement> modular_derivation(const CompositionOptions& opt = {});

// Closed form (localized strata only, zero elsewhere):
//   -2i int f (g o phi)'  -  i int f (g o phi) dlog phi'.
Complex psi1_closed(const DiffeoGroupPtr& group, const CrossedProductElement& a,
                    const CrossedProductElement& b, const CompositionOptions& opt = {});
// Monomial form; throws LocalizationError unless the pair is localized.
Complex psi1_closed(const DiffeoGroupPtr& group, const MonomialPair& pair,
                    const CompositionOptions& opt = {});

Cochain<CrossedProductElement> psi1_closed_cochain(DiffeoGroupPtr group,
                                                   const CompositionOptions& opt = {});

// Regularized form: residue of pi(fU_w)(D pi(sigma^{-1}(gU_v)) - pi(gU_v) D)
// against |D|^{-1}; localization to the identity total word is what the
// residue sees, so non-localized pairs probe the fixed-point vanishing.
ResidueResult psi1_spectral(const DiffeoGroupPtr& group, const MonomialPair& pair,
                            int truncation, const HeatFitConfig& cfg);

// Gauge transformed family: arguments twisted by sigma powers,
// Psi^{(m)}(a0, a1) = Psi_1(sigma^m(a0), sigma^m(a1)).
ResidueResult psi_gauge_m(const DiffeoGroupPtr& group, const MonomialPair& pair, int m,
                          int truncation, const HeatFitConfig& cfg);

struct Theorem12Report {
  Complex closed_value{0.0, 0.0};    // Psi_1 closed form
  Complex rhs_value{0.0, 0.0};       // -2i tau + L_delta tau (closed paths)
  Complex spectral_value{0.0, 0.0};  // Psi_1 spectral form
  double closed_residual = 0.0;      // |closed - rhs|
  double spectral_residual = 0.0;    // |spectral - rhs|
  double fit_residual = 0.0;
};

Theorem12Report theorem12_check(const DiffeoGroupPtr& group, const MonomialPair& pair,
                                int truncation, const HeatFitConfig& cfg,
                                const CompositionOptions& opt = {});

}  // namespace sst
