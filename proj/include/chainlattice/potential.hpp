#pragma once

// Pair potentials as finite signed mixtures of Riesz components
// c_k r^{-s_k}, optionally with a hard core of radius sigma.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "chainlattice/errors.hpp"

namespace chainlattice {

/// Value returned for distances inside the hard core.
inline constexpr double kHardCoreInfinity = std::numeric_limits<double>::infinity();

inline bool is_hard_core_infinite(double v) { return v == kHardCoreInfinity; }

struct RieszComponent {
  double coefficient;
  double exponent;  // s > 1
};

struct MieParams {
  double n;
  double m;

  MieParams(double n_, double m_) : n(n_), m(m_) {
    if (!(m > 1.0) || !(n > m)) {
      std::ostringstream os;
      os << "Mie parameters require n > m > 1, got n=" << n << ", m=" << m;
      throw ParameterError(os.str());
    }
  }
};

class PotentialSpec {
 public:
  PotentialSpec(std::vector<RieszComponent> components, std::optional<double> hard_core_radius = {},
                std::string label = {})
      : components_(std::move(components)), sigma_(hard_core_radius), label_(std::move(label)) {
    if (components_.empty()) throw ParameterError("potential needs at least one Riesz component");
    for (const auto& c : components_) {
      if (!(c.exponent > 1.0)) {
        throw ParameterError("Riesz exponent must exceed 1, got " + std::to_string(c.exponent));
      }
      if (!std::isfinite(c.coefficient)) throw ParameterError("Riesz coefficient must be finite");
    }
    if (components_.size() == 2 && components_[0].exponent == components_[1].exponent) {
      throw ParameterError("two-component potential needs distinct exponents");
    }
    if (sigma_ && !(*sigma_ > 0.0)) {
      throw ParameterError("hard-core radius must be positive");
    }
  }

  const std::vector<RieszComponent>& components() const { return components_; }
  const std::optional<double>& hard_core_radius() const { return sigma_; }
  const std::string& label() const { return label_; }
  const std::optional<MieParams>& mie() const { return mie_; }

  PotentialSpec with_hard_core(double sigma) const {
    PotentialSpec copy = *this;
    if (!(sigma > 0.0)) throw ParameterError("hard-core radius must be positive");
    copy.sigma_ = sigma;
    return copy;
  }

  PotentialSpec without_hard_core() const {
    PotentialSpec copy = *this;
    copy.sigma_.reset();
    return copy;
  }

  /// True if a distance r is allowed by the hard core.
  bool feasible(double r) const { return !sigma_ || r >= *sigma_; }

  friend PotentialSpec mie_potential(const MieParams& params);

 private:
  std::vector<RieszComponent> components_;
  std::optional<double> sigma_;
  std::string label_;
  std::optional<MieParams> mie_;
};

/// (n,m) Mie potential  [m r^{-n} - n r^{-m}] / (n - m)  with minimum -1 at r = 1.
inline PotentialSpec mie_potential(const MieParams& params) {
  const double n = params.n;
  const double m = params.m;
  std::ostringstream label;
  label << "mie:n=" << n << ",m=" << m;
  PotentialSpec spec({{m / (n - m), n}, {-n / (n - m), m}}, std::nullopt, label.str());
  spec.mie_ = params;
  return spec;
}

/// Pointwise potential value, +infinity inside the hard core.
inline double evaluate(const PotentialSpec& spec, double r) {
  if (!(r > 0.0)) throw DomainError("potential: distance must be positive");
  if (!spec.feasible(r)) return kHardCoreInfinity;
  if (const auto& mie = spec.mie()) {
    return (mie->m * std::pow(r, -mie->n) - mie->n * std::pow(r, -mie->m)) / (mie->n - mie->m);
  }
  double sum = 0.0;
  for (const auto& c : spec.components()) sum += c.coefficient * std::pow(r, -c.exponent);
  return sum;
}

/// The n -> m+ limit of the Mie potential, r -> -(1 + m ln r) / r^m.
class MieLimitPotential {
 public:
  explicit MieLimitPotential(double m) : m_(m) {
    if (!(m > 1.0)) throw ParameterError("Mie limit potential requires m > 1");
  }
  double m() const { return m_; }
  double operator()(double r) const {
    if (!(r > 0.0)) throw DomainError("potential: distance must be positive");
    return -(1.0 + m_ * std::log(r)) * std::pow(r, -m_);
  }

 private:
  double m_;
};

inline MieLimitPotential mie_limit_potential(double m) { return MieLimitPotential(m); }

/// Density of the Laplace measure of r^{-s}:  t^{s/2-1} / Gamma(s/2).
inline double riesz_measure_density(double s, double t) {
  return std::exp((0.5 * s - 1.0) * std::log(t) - boost::math::lgamma(0.5 * s));
}

// --- text form -------------------------------------------------------------
//   mie:n=12,m=6[,sigma=1.1]
//   riesz:c=1,s=6;c=-2,s=3[,sigma=1.1]

namespace detail {

inline double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ParameterError("potential spec: bad number for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::map<std::string, double> parse_pairs(std::string_view group) {
  std::map<std::string, double> out;
  for (auto item : split(group, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("potential spec: expected key=value, got '" + std::string(item) + "'");
    }
    std::string key(item.substr(0, eq));
    if (out.count(key)) throw ParameterError("potential spec: duplicate key '" + key + "'");
    out[key] = parse_number(item.substr(eq + 1), key);
  }
  return out;
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline PotentialSpec parse_potential(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("potential spec must start with 'mie:' or 'riesz:'");
  }
  const auto kind = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (kind == "mie") {
    auto kv = detail::parse_pairs(body);
    if (!kv.count("n") || !kv.count("m")) throw ParameterError("mie spec needs n and m");
    auto spec = mie_potential(MieParams(kv["n"], kv["m"]));
    for (const auto& [key, value] : kv) {
      if (key != "n" && key != "m" && key != "sigma") {
        throw ParameterError("mie spec: unknown key '" + key + "'");
      }
    }
    if (kv.count("sigma")) spec = spec.with_hard_core(kv["sigma"]);
    return spec;
  }
  if (kind == "riesz") {
    std::vector<RieszComponent> components;
    std::optional<double> sigma;
    for (auto group : detail::split(body, ';')) {
      auto kv = detail::parse_pairs(group);
      if (kv.count("sigma")) {
        if (sigma) throw ParameterError("riesz spec: sigma given twice");
        sigma = kv["sigma"];
        kv.erase("sigma");
      }
      if (kv.empty()) continue;
      if (kv.size() != 2 || !kv.count("c") || !kv.count("s")) {
        throw ParameterError("riesz spec: each component needs exactly c and s");
      }
      components.push_back({kv["c"], kv["s"]});
    }
    return PotentialSpec(std::move(components), sigma, std::string(text));
  }
  throw ParameterError("unknown potential kind '" + std::string(kind) + "'");
}

inline std::string to_string(const PotentialSpec& spec) {
  std::ostringstream os;
  if (const auto& mie = spec.mie()) {
    os << "mie:n=" << detail::format_number(mie->n) << ",m=" << detail::format_number(mie->m);
  } else {
    os << "riesz:";
    bool first = true;
    for (const auto& c : spec.components()) {
      if (!first) os << ';';
      first = false;
      os << "c=" << detail::format_number(c.coefficient) << ",s=" << detail::format_number(c.exponent);
    }
  }
  if (const auto& sigma = spec.hard_core_radius()) os << ",sigma=" << detail::format_number(*sigma);
  return os.str();
}

}  // namespace chainlattice
