#pragma once

// Energy per particle of the equidistant chain {jA} and of the bipartite
// chain  2A Z  u  (2A Z + a),  a = 2A Delta/(1+Delta),  b = 2A/(1+Delta).
//
// Two independent routes are provided: zeta closed forms (fast path) and
// theta-function quadrature of the Laplace representation, applied per
// Riesz component.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include "chainlattice/errors.hpp"
#include "chainlattice/potential.hpp"
#include "chainlattice/quadrature.hpp"
#include "chainlattice/specfun.hpp"

namespace chainlattice {

class BipartiteChain {
 public:
  BipartiteChain(double A, double Delta) : A_(A), Delta_(Delta) {
    if (!(A > 0.0) || !(Delta > 0.0) || !std::isfinite(A) || !std::isfinite(Delta)) {
      std::ostringstream os;
      os << "bipartite chain requires A > 0 and Delta > 0, got A=" << A << ", Delta=" << Delta;
      throw ParameterError(os.str());
    }
  }

  static BipartiteChain from_epsilon(double A, double epsilon) { return {A, std::exp(epsilon)}; }

  double A() const { return A_; }
  double Delta() const { return Delta_; }
  double a() const { return 2.0 * A_ * Delta_ / (1.0 + Delta_); }
  double b() const { return 2.0 * A_ / (1.0 + Delta_); }
  /// 1/(1+Delta), the fraction of the period 2A taken by the gap b.
  double delta() const { return 1.0 / (1.0 + Delta_); }
  double epsilon() const { return std::log(Delta_); }
  double min_gap() const { return std::min(a(), b()); }

 private:
  double A_;
  double Delta_;
};

enum class EnergyMethod { closed_form, quadrature, brute_force };

inline const char* to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::closed_form: return "closed_form";
    case EnergyMethod::quadrature: return "quadrature";
    case EnergyMethod::brute_force: return "brute_force";
  }
  return "?";
}

struct EnergyResult {
  double value;
  EnergyMethod method;
  double est_error = 0.0;

  bool infeasible() const { return is_hard_core_infinite(value); }
};

/// Energy per particle of the bipartite chain for f(r) = r^{-s}:
///   U = (2A)^{-s} [zeta(s) + (zeta(s, Delta/(1+Delta)) + zeta(s, 1/(1+Delta))) / 2].
inline double riesz_lattice_sum(double s, double A, double Delta) {
  [[maybe_unused]] const BipartiteChain chain(A, Delta);
  const double scale = std::pow(2.0 * A, -s);
  const double hurwitz = specfun::hurwitz_zeta(s, Delta / (1.0 + Delta)) +
                         specfun::hurwitz_zeta(s, 1.0 / (1.0 + Delta));
  return scale * (specfun::riemann_zeta(s) + 0.5 * hurwitz);
}

inline EnergyResult equidistant_energy(const PotentialSpec& spec, double A) {
  if (!(A > 0.0)) throw ParameterError("equidistant energy requires A > 0");
  if (!spec.feasible(A)) return {kHardCoreInfinity, EnergyMethod::closed_form, 0.0};
  if (const auto& mie = spec.mie()) {
    const double n = mie->n;
    const double m = mie->m;
    const double v = (m * specfun::riemann_zeta(n) * std::pow(A, -n) -
                      n * specfun::riemann_zeta(m) * std::pow(A, -m)) /
                     (n - m);
    return {v, EnergyMethod::closed_form, 0.0};
  }
  double sum = 0.0;
  for (const auto& c : spec.components()) {
    sum += c.coefficient * specfun::riemann_zeta(c.exponent) * std::pow(A, -c.exponent);
  }
  return {sum, EnergyMethod::closed_form, 0.0};
}

inline EnergyResult bipartite_energy(const PotentialSpec& spec, const BipartiteChain& chain) {
  if (!spec.feasible(chain.min_gap())) return {kHardCoreInfinity, EnergyMethod::closed_form, 0.0};
  if (chain.Delta() == 1.0) return equidistant_energy(spec, chain.A());
  double sum = 0.0;
  for (const auto& c : spec.components()) {
    sum += c.coefficient * riesz_lattice_sum(c.exponent, chain.A(), chain.Delta());
  }
  return {sum, EnergyMethod::closed_form, 0.0};
}

namespace detail {

// Integration window in u = ln x for integrands behaving like
// x^{(s-1)/2} as x -> 0 and exp(-phi_min^2 x) x^{s/2} as x -> infinity.
struct LogWindow {
  double lo;
  double hi;
};

inline LogWindow mellin_window(double s, double phi_min) {
  const double lo = -2.0 * 42.0 / (s - 1.0) - 1.0;
  const double hi = std::log((s + 80.0) / (phi_min * phi_min));
  return {lo, hi};
}

inline std::vector<double> poisson_breakpoint() { return {std::log(std::numbers::pi)}; }

}  // namespace detail

/// Equidistant energy from  (1/2) int [theta3(exp(-A^2 t)) - 1] dmu(t).
inline EnergyResult equidistant_energy_quadrature(const PotentialSpec& spec, double A) {
  if (!(A > 0.0)) throw ParameterError("equidistant energy requires A > 0");
  if (!spec.feasible(A)) return {kHardCoreInfinity, EnergyMethod::quadrature, 0.0};
  double sum = 0.0;
  double err = 0.0;
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    const auto window = detail::mellin_window(s, 1.0);
    auto integrand = [s](double u) {
      const double x = std::exp(u);
      return 0.5 * specfun::theta3_minus_one(x) * std::exp(0.5 * s * u);
    };
    const auto r = quadrature::integrate_panels(integrand, window.lo, window.hi, detail::poisson_breakpoint());
    const double scale = c.coefficient * std::pow(A, -s) / boost::math::tgamma(0.5 * s);
    sum += scale * r.value;
    err += std::abs(scale) * r.error;
  }
  return {sum, EnergyMethod::quadrature, err};
}

/// Bipartite energy by quadrature of
///   (1/2) int (theta3(e^{-4A^2 t}) - 1) dmu
///   + (1/4) int sum_j [e^{-(a+2jA)^2 t} + e^{-(b+2jA)^2 t}] dmu,
/// where both lattice sums are shifted theta functions of x = 4A^2 t.
inline EnergyResult bipartite_energy_quadrature(const PotentialSpec& spec, const BipartiteChain& chain) {
  if (!spec.feasible(chain.min_gap())) return {kHardCoreInfinity, EnergyMethod::quadrature, 0.0};
  const double A = chain.A();
  const double phi_a = chain.Delta() / (1.0 + chain.Delta());
  const double phi_b = chain.delta();
  const double phi_min = std::min(phi_a, phi_b);
  double sum = 0.0;
  double err = 0.0;
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    const auto window = detail::mellin_window(s, phi_min);
    auto integrand = [&](double u) {
      const double x = std::exp(u);
      const double even = 0.5 * specfun::theta3_minus_one(x);
      const double shifted = 0.25 * (specfun::shifted_theta(phi_a, x) + specfun::shifted_theta(phi_b, x));
      return (even + shifted) * std::exp(0.5 * s * u);
    };
    const auto r = quadrature::integrate_panels(integrand, window.lo, window.hi, detail::poisson_breakpoint());
    const double scale = c.coefficient * std::pow(2.0 * A, -s) / boost::math::tgamma(0.5 * s);
    sum += scale * r.value;
    err += std::abs(scale) * r.error;
  }
  return {sum, EnergyMethod::quadrature, err};
}

/// The two theta-moment integrals characterizing a local minimum of the
/// equidistant energy at A:
///   first  = int t theta3^{(1)}(e^{-A^2 t}) dmu   (vanishes at a stationary A)
///   second = int t^2 theta3^{(2)}(e^{-A^2 t}) dmu
/// where theta3^{(n)} denotes the n-th t-derivative.  `scale` sums the
/// magnitudes of the per-component contributions to `first`.
struct MinimumConditions {
  double first;
  double second;
  double scale;
};

inline MinimumConditions equidistant_minimum_conditions(const PotentialSpec& spec, double A) {
  if (!(A > 0.0)) throw ParameterError("minimum conditions require A > 0");
  MinimumConditions out{0.0, 0.0, 0.0};
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    const auto window = detail::mellin_window(s, 1.0);
    auto first = [s](double u) {
      const double x = std::exp(u);
      return x * specfun::theta_derivative(specfun::ThetaKind::theta3, 1, x) * std::exp(0.5 * s * u);
    };
    auto second = [s](double u) {
      const double x = std::exp(u);
      return x * x * specfun::theta_derivative(specfun::ThetaKind::theta3, 2, x) * std::exp(0.5 * s * u);
    };
    const double scale = c.coefficient * std::pow(A, -s) / boost::math::tgamma(0.5 * s);
    const double i1 = scale * quadrature::integrate_panels(first, window.lo, window.hi,
                                                           detail::poisson_breakpoint()).value;
    const double i2 = scale * quadrature::integrate_panels(second, window.lo, window.hi,
                                                           detail::poisson_breakpoint()).value;
    out.first += i1;
    out.second += i2;
    out.scale += std::abs(i1);
  }
  return out;
}

struct EquidistantMinimum {
  double A_min;
  double E_min;
  double A_min_search;  // 1D minimization of equidistant_energy
  double E_min_search;
};

/// A_min = [zeta(n)/zeta(m)]^{1/(n-m)},
/// E_min = -zeta(n)^{m/(m-n)} zeta(m)^{n/(n-m)}.
inline EquidistantMinimum find_A_min(const MieParams& params, bool cross_check = true) {
  const double n = params.n;
  const double m = params.m;
  const double log_zn = std::log(specfun::riemann_zeta(n));
  const double log_zm = std::log(specfun::riemann_zeta(m));
  EquidistantMinimum out{};
  out.A_min = std::exp((log_zn - log_zm) / (n - m));
  out.E_min = -std::exp(m / (m - n) * log_zn + n / (n - m) * log_zm);
  out.A_min_search = out.A_min;
  out.E_min_search = out.E_min;
  if (cross_check) {
    const auto spec = mie_potential(params);
    auto energy = [&](double A) { return equidistant_energy(spec, A).value; };
    const auto best = boost::math::tools::brent_find_minima(energy, 0.3 * out.A_min, 3.0 * out.A_min, 40);
    out.A_min_search = best.first;
    out.E_min_search = best.second;
  }
  return out;
}

/// lim_{n -> m+} A_min = exp(zeta'(m)/zeta(m)).
inline double A_min_limit(double m) {
  if (!(m > 1.0)) throw ParameterError("A_min_limit requires m > 1");
  return std::exp(specfun::zeta_log_derivative(m));
}

}  // namespace chainlattice
