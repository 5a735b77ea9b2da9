#include "sst/crossed_product.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace sst {

using nlohmann::json;

GroupWord GroupWord::generator(int index, int exponent) {
  if (exponent != 1 && exponent != -1)
    throw Error("GroupWord::generator: exponent must be +1 or -1");
  GroupWord w;
  w.letters_.push_back({index, exponent});
  return w;
}

GroupWord GroupWord::concat(const GroupWord& rhs) const {
  GroupWord out = *this;
  for (const auto& l : rhs.letters_) {
    if (!out.letters_.empty()) {
      const auto& last = out.letters_.back();
      if (last.generator == l.generator && last.exponent == -l.exponent) {
        out.letters_.pop_back();
        continue;
      }
    }
    out.letters_.push_back(l);
  }
  return out;
}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back({it->generator, -it->exponent});
  }
  return out;
}

DiffeoGroup::DiffeoGroup(std::vector<std::pair<std::string, CircleDiffeo>> generators) {
  names_.reserve(generators.size());
  generators_.reserve(generators.size());
  inverses_.reserve(generators.size());
  for (auto& [name, d] : generators) {
    names_.push_back(name);
    inverses_.push_back(d.inverse());
    generators_.push_back(std::move(d));
  }
}

const CircleDiffeo& DiffeoGroup::generator(int index) const {
  return generators_.at(static_cast<std::size_t>(index));
}

const CircleDiffeo& DiffeoGroup::generator_inverse(int index) const {
  return inverses_.at(static_cast<std::size_t>(index));
}

const std::string& DiffeoGroup::generator_name(int index) const {
  return names_.at(static_cast<std::size_t>(index));
}

int DiffeoGroup::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const CircleDiffeo& DiffeoGroup::realize(const GroupWord& word) const {
  std::scoped_lock lock(cache_mutex_);
  auto it = cache_.find(word);
  if (it != cache_.end()) return *it->second;

  CircleDiffeo result;  // identity
  // leftmost letter outermost: realize([l1..ln]) = phi_{l1} o ... o phi_{ln}
  for (auto lit = word.letters().rbegin(); lit != word.letters().rend(); ++lit) {
    const CircleDiffeo& g =
        lit->exponent > 0 ? generator(lit->generator) : generator_inverse(lit->generator);
    result = result.is_identity(1e-15) ? g : compose(g, result);
  }
  auto [ins, ok] = cache_.emplace(word, std::make_unique<CircleDiffeo>(std::move(result)));
  (void)ok;
  return *ins->second;
}

std::string DiffeoGroup::word_to_string(const GroupWord& word) const {
  if (word.is_identity()) return "e";
  std::string out;
  for (const auto& l : word.letters()) {
    if (!out.empty()) out += '.';
    out += generator_name(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

GroupWord DiffeoGroup::word_from_string(const std::string& text) const {
  GroupWord w;
  if (text.empty() || text == "e") return w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    pos = dot == std::string::npos ? text.size() : dot + 1;
    int exp = 1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      exp = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    const int idx = generator_index(tok);
    if (idx < 0) throw ConfigError("word_from_string: unknown generator '" + tok + "'");
    w = w.concat(GroupWord::generator(idx, exp));
  }
  return w;
}

std::vector<WordCollision> diagnose_word_collisions(const DiffeoGroup& group,
                                                    const std::vector<GroupWord>& words,
                                                    double tol) {
  std::vector<WordCollision> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (words[i] == words[j]) continue;
      const auto& a = group.realize(words[i]);
      const auto& b = group.realize(words[j]);
      if (a.approx_equal(b, tol)) {
        double gap = (a.displacement() - b.displacement()).sup_norm();
        out.push_back({words[i], words[j], gap});
      }
    }
  }
  return out;
}

CrossedProductElement::CrossedProductElement(DiffeoGroupPtr group) : group_(std::move(group)) {
  if (!group_) throw Error("CrossedProductElement: null group");
}

CrossedProductElement CrossedProductElement::zero(DiffeoGroupPtr group) {
  return CrossedProductElement(std::move(group));
}

CrossedProductElement CrossedProductElement::scalar(DiffeoGroupPtr group, Complex value) {
  CrossedProductElement e(std::move(group));
  e.set_term(GroupWord::identity(), PeriodicFunction::constant(value));
  return e;
}

CrossedProductElement CrossedProductElement::monomial(DiffeoGroupPtr group,
                                                      PeriodicFunction coeff, GroupWord word) {
  CrossedProductElement e(std::move(group));
  e.set_term(std::move(word), std::move(coeff));
  return e;
}

PeriodicFunction CrossedProductElement::coefficient(const GroupWord& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? PeriodicFunction() : it->second;
}

void CrossedProductElement::set_term(GroupWord word, PeriodicFunction coeff) {
  if (coeff.is_zero(0.0)) {
    terms_.erase(word);
    return;
  }
  terms_.insert_or_assign(std::move(word), std::move(coeff));
}

CrossedProductElement& CrossedProductElement::operator+=(const CrossedProductElement& rhs) {
  for (const auto& [w, f] : rhs.terms_) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, f);
    } else {
      it->second += f;
      if (it->second.is_zero(0.0)) terms_.erase(it);
    }
  }
  return *this;
}

CrossedProductElement& CrossedProductElement::operator-=(const CrossedProductElement& rhs) {
  CrossedProductElement neg = rhs;
  neg *= Complex(-1.0);
  return *this += neg;
}

CrossedProductElement& CrossedProductElement::operator*=(Complex scalar) {
  if (scalar == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, f] : terms_) f *= scalar;
  return *this;
}

double CrossedProductElement::max_coefficient_band() const {
  double b = 0.0;
  for (const auto& [w, f] : terms_) b = std::max(b, static_cast<double>(f.band()));
  return b;
}

double CrossedProductElement::l2_norm() const {
  double s = 0.0;
  for (const auto& [w, f] : terms_) {
    const double n = f.l2_norm();
    s += n * n;
  }
  return std::sqrt(s);
}

CrossedProductElement multiply(const CrossedProductElement& a, const CrossedProductElement& b,
                               const CompositionOptions& opt) {
  CrossedProductElement out(a.group());
  for (const auto& [wa, f] : a.terms()) {
    const CircleDiffeo& phi = a.group()->realize(wa);
    for (const auto& [wb, g] : b.terms()) {
      // (f U*_wa)(g U*_wb) = f (g o phi_wa) U*_{wb o wa}
      const PeriodicFunction moved = compose(g, phi, opt).fn;
      const GroupWord w = wb.concat(wa);
      PeriodicFunction coeff = f * moved;
      auto it = out.terms().find(w);
      if (it != out.terms().end()) coeff += it->second;
      out.set_term(w, std::move(coeff));
    }
  }
  return out;
}

CrossedProductElement involution(const CrossedProductElement& a, const CompositionOptions& opt) {
  CrossedProductElement out(a.group());
  for (const auto& [w, f] : a.terms()) {
    const GroupWord winv = w.inverse();
    const CircleDiffeo& phi_inv = a.group()->realize(winv);
    PeriodicFunction coeff = compose(f.conjugate(), phi_inv, opt).fn;
    auto it = out.terms().find(winv);
    if (it != out.terms().end()) coeff += it->second;
    out.set_term(winv, std::move(coeff));
  }
  return out;
}

namespace {
CrossedProductElement termwise_weight(
    const CrossedProductElement& a, const CompositionOptions& opt,
    const std::function<PeriodicFunction(const CircleDiffeo&, const CompositionOptions&)>& wfn) {
  CrossedProductElement out(a.group());
  for (const auto& [w, f] : a.terms()) {
    const CircleDiffeo& phi = a.group()->realize(w);
    if (w.is_identity()) {
      out.set_term(w, f);  // phi' = 1 on the identity word
      continue;
    }
    out.set_term(w, wfn(phi, opt) * f);
  }
  return out;
}
}  // namespace

CrossedProductElement sigma(const CrossedProductElement& a, int power,
                            const CompositionOptions& opt) {
  if (power == 0) return a;
  return termwise_weight(a, opt, [&](const CircleDiffeo& phi, const CompositionOptions& o) {
    return derivative_power(phi, Complex(static_cast<double>(power), 0.0), o).fn;
  });
}

CrossedProductElement sigma_t(const CrossedProductElement& a, double t,
                              const CompositionOptions& opt) {
  return sigma_analytic(a, Complex(t, 0.0), opt);
}

CrossedProductElement sigma_analytic(const CrossedProductElement& a, Complex z,
                                     const CompositionOptions& opt) {
  if (z == Complex(0.0)) return a;
  const Complex exponent = Complex(0.0, 1.0) * z;  // (phi')^{iz}
  return termwise_weight(a, opt, [&](const CircleDiffeo& phi, const CompositionOptions& o) {
    return derivative_power(phi, exponent, o).fn;
  });
}

CrossedProductElement delta(const CrossedProductElement& a, const CompositionOptions& opt) {
  CrossedProductElement out(a.group());
  for (const auto& [w, f] : a.terms()) {
    if (w.is_identity()) continue;  // delta kills C^inf(S^1)
    const CircleDiffeo& phi = a.group()->realize(w);
    const PeriodicFunction weight = Complex(0.0, 1.0) * log_derivative(phi, opt).fn;
    if (weight.is_zero(1e-300)) continue;  // rotations
    out.set_term(w, weight * f);
  }
  return out;
}

Complex state(const CrossedProductElement& a) {
  return a.coefficient(GroupWord::identity()).integral();
}

std::string to_json(const CrossedProductElement& a) {
  json arr = json::array();
  for (const auto& [w, f] : a.terms()) {
    json coeffs = json::array();
    for (int k = -f.band(); k <= f.band(); ++k) {
      const Complex c = f.coefficient(k);
      if (c == Complex(0.0)) continue;
      coeffs.push_back({k, c.real(), c.imag()});
    }
    arr.push_back({{"word", a.group()->word_to_string(w)}, {"coeffs", coeffs}});
  }
  return json{{"terms", arr}}.dump();
}

CrossedProductElement element_from_json(DiffeoGroupPtr group, const std::string& json_text) {
  json j = json::parse(json_text);
  CrossedProductElement out(group);
  for (const auto& term : j.at("terms")) {
    const GroupWord w = group->word_from_string(term.at("word").get<std::string>());
    int band = 0;
    for (const auto& c : term.at("coeffs")) band = std::max(band, std::abs(c.at(0).get<int>()));
    std::vector<Complex> coeffs(2 * static_cast<std::size_t>(band) + 1, Complex(0.0));
    for (const auto& c : term.at("coeffs")) {
      const int k = c.at(0).get<int>();
      coeffs[static_cast<std::size_t>(k + band)] =
          Complex(c.at(1).get<double>(), c.at(2).get<double>());
    }
    PeriodicFunction f = PeriodicFunction::from_coefficients(std::move(coeffs));
    auto it = out.terms().find(w);
    if (it != out.terms().end()) f += it->second;
    out.set_term(w, std::move(f));
  }
  return out;
}

}  // namespace sst
