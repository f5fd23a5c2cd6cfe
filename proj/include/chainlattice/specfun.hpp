#pragma once

// Riemann and Hurwitz zeta functions for real s > 1, the logarithmic
// derivative zeta'/zeta, and the zero-argument Jacobi theta functions
// theta2/theta3 (plus a shifted variant) together with their derivatives
// in the nome exponent.
//
// Theta functions are parameterized by the exponent x > 0 of the nome
// q = exp(-x), i.e.
//
//   theta3(x) = sum_j exp(-j^2 x),   theta2(x) = sum_j exp(-(j+1/2)^2 x).
//
// For x < pi the Poisson-resummed form is used, otherwise the direct sum.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "chainlattice/errors.hpp"

namespace chainlattice::specfun {

namespace detail {

// B_2, B_4, ..., B_16.
inline constexpr std::array<double, 8> kBernoulliEven = {
    1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,   -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

// (2k)! for k = 1..8.
inline constexpr std::array<double, 8> kFactorialEven = {
    2.0,          24.0,           720.0,           40320.0,
    3628800.0,    479001600.0,    87178291200.0,   20922789888000.0};

struct ZetaValue {
  double value;
  double ds;  // derivative with respect to s
};

// Euler-Maclaurin: direct sum until a + N >= 15 max(1, s/4), then the
// integral, midpoint and Bernoulli corrections through B_16.
inline ZetaValue hurwitz_euler_maclaurin(double s, double a, bool with_ds) {
  const double target = 15.0 * std::max(1.0, s / 4.0);
  const int n_direct = a >= target ? 0 : static_cast<int>(std::ceil(target - a));
  const double w = a + n_direct;
  const double log_w = std::log(w);
  const double w_pow = std::exp(-s * log_w);  // w^{-s}

  double tail = w * w_pow / (s - 1.0) + 0.5 * w_pow;
  double tail_ds = with_ds ? -w * w_pow / (s - 1.0) * (log_w + 1.0 / (s - 1.0)) -
                                 0.5 * w_pow * log_w
                           : 0.0;

  // term_j = B_2j / (2j)! * (s)_{2j-1} * w^{-s-2j+1}
  double rising = s;                    // (s)_{2j-1}
  double harmonic = 1.0 / s;            // sum_{i < 2j-1} 1/(s+i)
  double w_factor = w_pow / w;          // w^{-s-2j+1}
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    const double term = kBernoulliEven[j] / kFactorialEven[j] * rising * w_factor;
    tail += term;
    if (with_ds) tail_ds += term * (harmonic - log_w);
    const double k = 2.0 * static_cast<double>(j) + 1.0;  // next two factors
    rising *= (s + k) * (s + k + 1.0);
    harmonic += 1.0 / (s + k) + 1.0 / (s + k + 1.0);
    w_factor /= w * w;
  }

  double sum = tail;
  double sum_ds = tail_ds;
  for (int k = n_direct - 1; k >= 0; --k) {
    const double base = a + k;
    const double lb = std::log(base);
    const double term = std::exp(-s * lb);
    sum += term;
    if (with_ds) sum_ds -= lb * term;
  }
  return {sum, sum_ds};
}

inline void require_s(double s, const char* who) {
  if (!(s > 1.0)) {
    throw DomainError(std::string(who) + ": requires s > 1, got " + std::to_string(s));
  }
}

}  // namespace detail

/// Hurwitz zeta  sum_{j>=0} (j+a)^{-s}  for s > 1, a > 0.
inline double hurwitz_zeta(double s, double a) {
  detail::require_s(s, "hurwitz_zeta");
  if (!(a > 0.0)) {
    throw DomainError("hurwitz_zeta: requires a > 0, got " + std::to_string(a));
  }
  return detail::hurwitz_euler_maclaurin(s, a, false).value;
}

inline double riemann_zeta(double s) {
  detail::require_s(s, "riemann_zeta");
  return detail::hurwitz_euler_maclaurin(s, 1.0, false).value;
}

/// zeta'(s) / zeta(s).
inline double zeta_log_derivative(double s) {
  detail::require_s(s, "zeta_log_derivative");
  const auto z = detail::hurwitz_euler_maclaurin(s, 1.0, true);
  return z.ds / z.value;
}

enum class ThetaKind { theta2, theta3 };

namespace detail {

// d^n/dx^n [x^{-1/2} exp(-b/x)] = x^{-1/2-n} exp(-b/x) P_n(b/x).
inline double poisson_polynomial(int order, double z) {
  switch (order) {
    case 0: return 1.0;
    case 1: return z - 0.5;
    case 2: return (z - 3.0) * z + 0.75;
    case 3: return ((z - 7.5) * z + 11.25) * z - 1.875;
    default: throw ParameterError("theta derivative order must be 0..3");
  }
}

inline void require_theta_args(int order, double x) {
  if (order < 0 || order > 3) {
    throw ParameterError("theta derivative order must be 0..3, got " + std::to_string(order));
  }
  if (!(x > 0.0)) {
    throw DomainError("theta: requires q_exponent > 0, got " + std::to_string(x));
  }
}

inline constexpr double kPoissonSwitch = std::numbers::pi;
inline constexpr double kThetaRelTol = 1e-18;
inline constexpr int kThetaMaxTerms = 400;

// d^n/dx^n sum_j exp(-(j+phi)^2 x) for phi in [0, 1).  With drop_mean the
// smooth part sqrt(pi/x) (its derivative) is subtracted, which removes the
// power-law piece that cancels analytically in the Landau moment integrals.
inline double shifted_theta_derivative(double phi, int order, double x, bool drop_mean) {
  constexpr double pi = std::numbers::pi;
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  if (x < kPoissonSwitch) {
    const double prefactor = std::sqrt(pi) * std::pow(x, -0.5 - order);
    double sum = drop_mean ? 0.0 : poisson_polynomial(order, 0.0);
    for (int k = 1; k < kThetaMaxTerms; ++k) {
      const double z = pi * pi * k * k / x;
      const double weight = 2.0 * std::cos(2.0 * pi * k * phi);
      const double term = weight * std::exp(-z) * poisson_polynomial(order, z);
      sum += term;
      if (z > order + 2.0 && std::abs(term) <= kThetaRelTol * std::abs(sum)) break;
      if (z > 745.0) break;
    }
    return prefactor * sum;
  }
  // Direct sum over j >= 0 of both (j+phi) and (j+1-phi).
  double sum = 0.0;
  for (int j = 0; j < kThetaMaxTerms; ++j) {
    const double u1 = (j + phi) * (j + phi);
    const double u2 = (j + 1.0 - phi) * (j + 1.0 - phi);
    const double term = std::pow(u1, order) * std::exp(-u1 * x) +
                        std::pow(u2, order) * std::exp(-u2 * x);
    sum += term;
    const double u = std::min(u1, u2);
    if (u * x > order + 2.0 && term <= kThetaRelTol * sum) break;
    if (u * x > 745.0) break;
  }
  double value = sign * sum;
  if (drop_mean) {
    value -= std::sqrt(pi) * std::pow(x, -0.5 - order) * poisson_polynomial(order, 0.0);
  }
  return value;
}

}  // namespace detail

/// d^order/dx^order of theta2 or theta3 at nome exponent x, order 0..3.
inline double theta_derivative(ThetaKind kind, int order, double x) {
  detail::require_theta_args(order, x);
  const double phi = kind == ThetaKind::theta2 ? 0.5 : 0.0;
  return detail::shifted_theta_derivative(phi, order, x, false);
}

/// Same as theta_derivative with the Poisson mean term sqrt(pi/x) removed.
inline double theta_derivative_oscillatory(ThetaKind kind, int order, double x) {
  detail::require_theta_args(order, x);
  const double phi = kind == ThetaKind::theta2 ? 0.5 : 0.0;
  return detail::shifted_theta_derivative(phi, order, x, true);
}

inline double theta3(double x) { return theta_derivative(ThetaKind::theta3, 0, x); }
inline double theta2(double x) { return theta_derivative(ThetaKind::theta2, 0, x); }

/// theta3(x) - 1 without cancellation for large x.
inline double theta3_minus_one(double x) {
  detail::require_theta_args(0, x);
  if (x < detail::kPoissonSwitch) return theta3(x) - 1.0;
  double sum = 0.0;
  for (int j = 1; j < detail::kThetaMaxTerms; ++j) {
    const double z = static_cast<double>(j) * j * x;
    const double term = std::exp(-z);
    sum += term;
    if (term <= detail::kThetaRelTol * sum || z > 745.0) break;
  }
  return 2.0 * sum;
}

/// sum_j exp(-(j+phi)^2 x); theta3 at phi = 0 and theta2 at phi = 1/2.
inline double shifted_theta(double phi, double x) {
  detail::require_theta_args(0, x);
  phi -= std::floor(phi);
  return detail::shifted_theta_derivative(phi, 0, x, false);
}

}  // namespace chainlattice::specfun
