#pragma once

// Even-power expansion of the bipartite energy in eps = ln Delta,
//   E_bip(A, e^eps) = E_eq(A) + E2(A) eps^2 + E4(A) eps^4 + E6(A) eps^6 + ...,
// the critical point where E2 changes sign, and the tricritical scan.

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "chainlattice/errors.hpp"
#include "chainlattice/lattice_energy.hpp"
#include "chainlattice/potential.hpp"
#include "chainlattice/quadrature.hpp"
#include "chainlattice/specfun.hpp"

namespace chainlattice {

enum class LandauMethod { closed_form, quadrature, finite_difference };

struct LandauCoefficients {
  double A = 0.0;
  double E_eq = 0.0;
  double E2 = 0.0;
  double E4 = 0.0;
  double E6 = std::numeric_limits<double>::quiet_NaN();  // NaN when not computed
  LandauMethod method = LandauMethod::closed_form;
};

namespace detail {

// log(2^x - 1) without overflow for large x.
inline double log_pow2_minus_one(double x) {
  return x * std::numbers::ln2 + std::log1p(-std::exp2(-x));
}

// (s)_k / k! * (2^{s+k} - 1) zeta(s+k) (2A)^{-s}: the k-th Taylor weight of
// zeta(s, 1/2 + h) + zeta(s, 1/2 - h) (up to the factor 2 h^k).
inline double half_shift_weight(double s, int k, double A) {
  double rising = 1.0;
  for (int i = 0; i < k; ++i) rising *= (s + i) / (i + 1.0);
  return rising * std::exp(log_pow2_minus_one(s + k) - s * std::log(2.0 * A)) *
         specfun::riemann_zeta(s + k);
}

}  // namespace detail

/// E2 and E4 of the (n,m) Mie chain from their zeta closed forms.
inline LandauCoefficients landau_E2_E4_closed(const MieParams& params, double A) {
  if (!(A > 0.0)) throw ParameterError("Landau coefficients require A > 0");
  const double n = params.n;
  const double m = params.m;
  auto e2_term = [A](double s) {
    return std::exp(detail::log_pow2_minus_one(2.0 + s) - s * std::log(2.0 * A)) * (1.0 + s) *
           specfun::riemann_zeta(s + 2.0);
  };
  auto e4_term = [A](double s) {
    return std::exp(detail::log_pow2_minus_one(4.0 + s) - s * std::log(2.0 * A)) * (1.0 + s) * (2.0 + s) *
           (3.0 + s) * specfun::riemann_zeta(s + 4.0);
  };
  LandauCoefficients out;
  out.A = A;
  out.E_eq = equidistant_energy(mie_potential(params), A).value;
  out.E2 = n * m / (n - m) / 32.0 * (e2_term(n) - e2_term(m));
  out.E4 = n * m / (3.0 * (n - m)) / 2048.0 * (e4_term(n) - e4_term(m)) - out.E2 / 6.0;
  out.method = LandauMethod::closed_form;
  return out;
}

/// E2, E4 and E6 for any Riesz mixture, from the Taylor expansion of the
/// Hurwitz pair zeta(s,1/2+h) + zeta(s,1/2-h) with h = tanh(eps/2)/2.
inline LandauCoefficients landau_coefficients_closed(const PotentialSpec& spec, double A) {
  if (!(A > 0.0)) throw ParameterError("Landau coefficients require A > 0");
  LandauCoefficients out;
  out.A = A;
  out.E_eq = equidistant_energy(spec.without_hard_core(), A).value;
  out.E2 = out.E4 = out.E6 = 0.0;
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    const double z2 = detail::half_shift_weight(s, 2, A);
    const double z4 = detail::half_shift_weight(s, 4, A);
    const double z6 = detail::half_shift_weight(s, 6, A);
    // h^2 = eps^2/16 - eps^4/96 + 17 eps^6/11520,  h^4 = eps^4/256 - eps^6/768,
    // h^6 = eps^6/4096.
    out.E2 += c.coefficient * z2 / 16.0;
    out.E4 += c.coefficient * (-z2 / 96.0 + z4 / 256.0);
    out.E6 += c.coefficient * (17.0 * z2 / 11520.0 - z4 / 768.0 + z6 / 4096.0);
  }
  out.method = LandauMethod::closed_form;
  return out;
}

/// dE2/dA from the closed form.
inline double landau_E2_slope(const PotentialSpec& spec, double A) {
  double sum = 0.0;
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    sum += c.coefficient * (-s / A) * detail::half_shift_weight(s, 2, A) / 16.0;
  }
  return sum;
}

/// E2, E4, E6 from their theta2-moment integrals, per Riesz component.
/// The smooth Poisson term of theta2 cancels pointwise in each integrand
/// and is dropped before integration on the small-x side.
inline LandauCoefficients landau_coefficients_quadrature(const PotentialSpec& spec, double A) {
  if (!(A > 0.0)) throw ParameterError("Landau coefficients require A > 0");
  using specfun::ThetaKind;
  const double A2 = A * A;
  const double A4 = A2 * A2;
  const double four_A2 = 4.0 * A2;

  LandauCoefficients out;
  out.A = A;
  out.E_eq = equidistant_energy_quadrature(spec.without_hard_core(), A).value;
  out.E2 = out.E4 = out.E6 = 0.0;
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    // u = ln(4 A^2 t); dmu = (2A)^{-s} / Gamma(s/2) x^{s/2} du.
    const double measure = c.coefficient * std::pow(2.0 * A, -s) / boost::math::tgamma(0.5 * s);
    // The mean term only needs removing where it dominates (small x);
    // elsewhere the full series avoids cancelling it against O(1) sums.
    auto theta = [four_A2](int k, double x) {
      const double d = x < specfun::detail::kPoissonSwitch
                           ? specfun::theta_derivative_oscillatory(ThetaKind::theta2, k, x)
                           : specfun::theta_derivative(ThetaKind::theta2, k, x);
      return std::pow(four_A2, k) * d;
    };
    auto e2 = [&](double u) {
      const double x = std::exp(u);
      const double t = x / four_A2;
      return (0.5 * t * theta(0, x) + t * t * theta(1, x)) * std::exp(0.5 * s * u);
    };
    auto e4 = [&](double u) {
      const double x = std::exp(u);
      const double t = x / four_A2;
      const double t2 = t * t;
      return ((t / 3.0 + A2 * t2 / 4.0) * theta(0, x) + (2.0 * t2 / 3.0 + A2 * t2 * t) * theta(1, x) +
              A2 * t2 * t2 / 3.0 * theta(2, x)) *
             std::exp(0.5 * s * u);
    };
    auto e6 = [&](double u) {
      const double x = std::exp(u);
      const double t = x / four_A2;
      const double t2 = t * t;
      const double t3 = t2 * t;
      const double t4 = t2 * t2;
      return ((17.0 * t / 1440.0 + A2 * t2 / 48.0 + A4 * t3 / 192.0) * theta(0, x) +
              (17.0 * t2 / 720.0 + A2 * t3 / 12.0 + A4 * t4 / 32.0) * theta(1, x) +
              (A2 * t4 / 36.0 + A4 * t4 * t / 48.0) * theta(2, x) + A4 * t4 * t2 / 360.0 * theta(3, x)) *
             std::exp(0.5 * s * u);
    };
    // exp(-pi^2/x) underflows below x ~ 0.013; theta2 decays like exp(-x/4).
    const double lo = std::log(std::numbers::pi * std::numbers::pi / 745.0);
    const double hi = std::log(4.0 * (s + 120.0));
    const auto bp = detail::poisson_breakpoint();
    out.E2 += -A2 / 4.0 * measure * quadrature::integrate_panels(e2, lo, hi, bp).value;
    out.E4 += A2 / 16.0 * measure * quadrature::integrate_panels(e4, lo, hi, bp).value;
    out.E6 += -A2 / 4.0 * measure * quadrature::integrate_panels(e6, lo, hi, bp).value;
  }
  out.method = LandauMethod::quadrature;
  return out;
}

struct TransitionPoint {
  double A_c = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool sign_change_verified = false;
  double E4_at_Ac = 0.0;
};

/// log A_c = -ln 2 + [ln((2^{2+n}-1)(1+n) zeta(n+2)) - ln(same at m)] / (n - m).
inline double critical_A(const MieParams& params) {
  auto f = [](double s) {
    return detail::log_pow2_minus_one(2.0 + s) + std::log1p(s) + std::log(specfun::riemann_zeta(s + 2.0));
  };
  return 0.5 * std::exp((f(params.n) - f(params.m)) / (params.n - params.m));
}

inline TransitionPoint critical_point(const MieParams& params) {
  TransitionPoint tp;
  tp.A_c = critical_A(params);
  tp.lo = tp.A_c * (1.0 - 1e-3);
  tp.hi = tp.A_c * (1.0 + 1e-3);
  const double e2_lo = landau_E2_E4_closed(params, tp.lo).E2;
  const double e2_hi = landau_E2_E4_closed(params, tp.hi).E2;
  tp.sign_change_verified = e2_lo > 0.0 && e2_hi < 0.0;
  tp.E4_at_Ac = landau_E2_E4_closed(params, tp.A_c).E4;
  return tp;
}

/// lim_{n -> m+} A_c = exp(ln 2/(2^{2+m}-1) + 1/(1+m) + zeta'(m+2)/zeta(m+2)).
inline double critical_point_limit_n_to_m(double m) {
  if (!(m > 1.0)) throw ParameterError("critical_point_limit_n_to_m requires m > 1");
  return std::exp(std::numbers::ln2 / std::expm1((2.0 + m) * std::numbers::ln2) + 1.0 / (1.0 + m) +
                  specfun::zeta_log_derivative(m + 2.0));
}

/// g(x) = (2^{2+x}-1) zeta(x+2) / [(2^{4+x}-1)(2+x)(3+x) zeta(x+4)]; a
/// tricritical point would require g(n) = g(m) for some n > m.
inline double tricritical_g(double x) {
  return std::exp(detail::log_pow2_minus_one(2.0 + x) - detail::log_pow2_minus_one(4.0 + x)) *
         specfun::riemann_zeta(x + 2.0) / ((2.0 + x) * (3.0 + x) * specfun::riemann_zeta(x + 4.0));
}

struct TricriticalReport {
  std::size_t g_points = 0;
  std::size_t g_violations = 0;  // non-negative forward differences of g
  double max_g_difference = -std::numeric_limits<double>::infinity();
  std::size_t pairs_checked = 0;
  std::vector<std::pair<double, double>> E4_violations;  // (n, m) with E4(A_c) <= 0
  double min_E4_at_Ac = std::numeric_limits<double>::infinity();

  bool ok() const { return g_violations == 0 && E4_violations.empty(); }
};

inline TricriticalReport tricritical_scan(const std::vector<double>& m_grid, const std::vector<double>& n_grid,
                                          double x_lo = 1.01, double x_hi = 60.0, double x_step = 0.01) {
  for (double v : m_grid) {
    if (!(v > 1.0 && v <= 60.0)) throw ParameterError("tricritical_scan: grid values must lie in (1, 60]");
  }
  for (double v : n_grid) {
    if (!(v > 1.0 && v <= 60.0)) throw ParameterError("tricritical_scan: grid values must lie in (1, 60]");
  }
  TricriticalReport report;
  const auto steps = static_cast<std::size_t>(std::llround((x_hi - x_lo) / x_step));
  double prev = tricritical_g(x_lo);
  report.g_points = 1;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x = x_lo + static_cast<double>(i) * x_step;
    const double g = tricritical_g(x);
    const double diff = g - prev;
    report.max_g_difference = std::max(report.max_g_difference, diff);
    if (!(diff < 0.0)) ++report.g_violations;
    prev = g;
    ++report.g_points;
  }
  for (double m : m_grid) {
    for (double n : n_grid) {
      if (!(n > m)) continue;
      const MieParams params(n, m);
      const auto tp = critical_point(params);
      ++report.pairs_checked;
      report.min_E4_at_Ac = std::min(report.min_E4_at_Ac, tp.E4_at_Ac);
      if (!(tp.E4_at_Ac > 0.0) || !tp.sign_change_verified) report.E4_violations.emplace_back(n, m);
    }
  }
  return report;
}

}  // namespace chainlattice
