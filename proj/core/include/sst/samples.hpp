#pragma once

// Deterministic sample data used by the verification suites and the CLI:
// seeded band-limited functions, the standard two-generator group, and the
// JSON diffeomorphism literals accepted in configs.

#include <nlohmann/json.hpp>

#include "sst/crossed_product.hpp"

namespace sst {

// Real band-limited function with coefficients ~ scale / (1 + k^2).
PeriodicFunction random_band_function(int band, std::uint64_t seed, double scale = 1.0);

// Free group on two generators: "s" = sine family phi_eps, "r" = rotation.
DiffeoGroupPtr standard_group(double epsilon = 0.3, double rotation_angle = 1.0 / 3.0);

// Profile g with |(g phi'^{1/2})' phi'^{-1/2}|^2 / phi' constant, which makes
// the twisted commutator with g U*_phi a scalar multiple of a unitary; the
// finite-section norm then reaches the symbol supremum without the O(N^-2)
// concentration penalty of a generic symbol.
PeriodicFunction unit_modulus_profile(const CircleDiffeo& phi, int band = 24);

// {"type": "sine", "epsilon": e} | {"type": "rotation", "alpha": a} |
// {"displacement": [[k, re, im], ...]}
CircleDiffeo diffeo_from_json(const nlohmann::json& j);

}  // namespace sst
