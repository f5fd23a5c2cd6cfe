#pragma once

// Least-squares power laws  y = prefactor * x^exponent  in log-log space.

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "chainlattice/errors.hpp"

namespace chainlattice {

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  int n_points = 0;
};

inline constexpr int kMinFitPoints = 8;

inline PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("fit_power_law: size mismatch");
  if (x.size() < static_cast<std::size_t>(kMinFitPoints)) {
    throw ParameterError("fit_power_law: degenerate fit, need at least 8 points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  double lo = x[0], hi = x[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("fit_power_law: data must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw ParameterError("fit_power_law: degenerate abscissae");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.window = {lo, hi};
  fit.n_points = static_cast<int>(x.size());
  return fit;
}

/// n points geometrically spaced on [lo, hi], endpoints included.
inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ParameterError("geometric_grid: need 0 < lo < hi, n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
  out.back() = hi;
  return out;
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) throw ParameterError("linear_grid: need lo < hi, n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

}  // namespace chainlattice
