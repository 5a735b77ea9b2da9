#include "sst/samples.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sst {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PeriodicFunction random_band_function(int band, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> c(2 * static_cast<std::size_t>(band) + 1, Complex(0.0));
  c[static_cast<std::size_t>(band)] = Complex(0.5 * scale * g(rng), 0.0);
  for (int k = 1; k <= band; ++k) {
    const Complex z(g(rng), g(rng));
    const Complex v = z * (scale / (2.0 * (1.0 + static_cast<double>(k) * k)));
    c[static_cast<std::size_t>(band + k)] = v;
    c[static_cast<std::size_t>(band - k)] = std::conj(v);
  }
  return PeriodicFunction::from_coefficients(std::move(c));
}

DiffeoGroupPtr standard_group(double epsilon, double rotation_angle) {
  std::vector<std::pair<std::string, CircleDiffeo>> gens;
  gens.emplace_back("s", CircleDiffeo::sine_family(epsilon));
  gens.emplace_back("r", CircleDiffeo::rotation(rotation_angle));
  return std::make_shared<DiffeoGroup>(std::move(gens));
}

PeriodicFunction unit_modulus_profile(const CircleDiffeo& phi, int band) {
  const std::size_t g = 1 << 14;
  std::vector<Complex> sq(g);
  double mean = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(g);
    sq[j] = Complex(std::sqrt(phi.derivative(x)), 0.0);
    mean += sq[j].real();
  }
  mean /= static_cast<double>(g);

  // periodic part of the antiderivative of sqrt(phi') - mean
  std::vector<Complex> hat = sq;
  fft::transform(hat, /*inverse=*/false);
  for (std::size_t j = 0; j < g; ++j) hat[j] /= static_cast<double>(g);
  std::vector<Complex> anti(g, Complex(0.0));
  const int gi = static_cast<int>(g);
  for (int k = 1; k < gi / 2; ++k) {
    anti[static_cast<std::size_t>(k)] = hat[static_cast<std::size_t>(k)] / Complex(0.0, kTwoPi * k);
    anti[g - static_cast<std::size_t>(k)] =
        hat[g - static_cast<std::size_t>(k)] / Complex(0.0, -kTwoPi * k);
  }
  fft::transform(anti, /*inverse=*/true);

  const double c = kTwoPi / mean;  // theta' = c sqrt(phi'), winding 1
  std::vector<Complex> vals(g);
  for (std::size_t j = 0; j < g; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(g);
    const double theta = kTwoPi * x + c * anti[j].real();
    vals[j] = std::polar(1.0, theta) / sq[j].real();
  }
  return project_samples(vals, band).fn;
}

CircleDiffeo diffeo_from_json(const nlohmann::json& j) {
  if (j.contains("type")) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sine") return CircleDiffeo::sine_family(j.at("epsilon").get<double>());
    if (type == "rotation") return CircleDiffeo::rotation(j.at("alpha").get<double>());
    if (type == "identity") return CircleDiffeo::identity();
    throw ConfigError("diffeo_from_json: unknown type '" + type + "'");
  }
  if (j.contains("displacement")) {
    int band = 0;
    for (const auto& t : j.at("displacement"))
      band = std::max(band, std::abs(t.at(0).get<int>()));
    std::vector<Complex> c(2 * static_cast<std::size_t>(band) + 1, Complex(0.0));
    for (const auto& t : j.at("displacement")) {
      const int k = t.at(0).get<int>();
      c[static_cast<std::size_t>(k + band)] =
          Complex(t.at(1).get<double>(), t.at(2).get<double>());
    }
    return CircleDiffeo::from_displacement(PeriodicFunction::from_coefficients(std::move(c)));
  }
  throw ConfigError("diffeo_from_json: need 'type' or 'displacement'");
}

}  // namespace sst
