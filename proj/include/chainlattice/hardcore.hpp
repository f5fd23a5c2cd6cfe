#pragma once

// Ground state of the Mie chain with a hard core of radius sigma.  The
// admissible bipartite parameters are 1 <= Delta <= 2A/sigma - 1, so the
// stationary Delta(A) is clipped by the boundary branch once it would bring
// the short gap b = 2A/(1+Delta) below sigma.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chainlattice/errors.hpp"
#include "chainlattice/fit.hpp"
#include "chainlattice/potential.hpp"
#include "chainlattice/roots.hpp"
#include "chainlattice/specfun.hpp"
#include "chainlattice/transition.hpp"

namespace chainlattice {

inline constexpr double kRegimeRelTolerance = 1e-14;

struct HardCoreConfig {
  MieParams params;
  double sigma;
  // sigma - 1, kept separately so that radii like 1 + 1e-12 stay exact.
  double sigma_minus_one;

  HardCoreConfig(const MieParams& p, double s) : params(p), sigma(s), sigma_minus_one(s - 1.0) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("hard-core radius must be positive");
  }

  static HardCoreConfig from_excess(const MieParams& p, double excess) {
    if (!(excess > -1.0)) throw ParameterError("hard-core radius must be positive");
    HardCoreConfig c(p, 1.0 + excess);
    c.sigma_minus_one = excess;
    return c;
  }
};

enum class HardCoreRegime {
  soft,      // sigma <= 1: the core is never touched
  junction,  // 1 < sigma <= A_c: trivial, unconstrained, then boundary
  boundary   // sigma > A_c: boundary branch from A = sigma
};

inline const char* to_string(HardCoreRegime r) {
  switch (r) {
    case HardCoreRegime::soft: return "soft";
    case HardCoreRegime::junction: return "junction";
    case HardCoreRegime::boundary: return "boundary";
  }
  return "?";
}

inline HardCoreRegime classify(const HardCoreConfig& config, double A_c) {
  if (config.sigma_minus_one <= kRegimeRelTolerance) return HardCoreRegime::soft;
  if (config.sigma <= A_c * (1.0 + kRegimeRelTolerance)) return HardCoreRegime::junction;
  return HardCoreRegime::boundary;
}

struct JunctionPoint {
  double A_star = 0.0;
  double Delta_star = 1.0;
  double delta_star = 0.5;
  double residual = 0.0;  // stationarity residual at (Delta*, A*)
};

/// Junction of the unconstrained and boundary branches.  With
/// A* = sigma/(2 delta*) the stationarity condition becomes
///   log R(delta*) + (m - n) log delta* = (m - n) log sigma.
inline JunctionPoint junction(const StationarityBalance& balance, const HardCoreConfig& config) {
  if (classify(config, balance.A_c()) != HardCoreRegime::junction) {
    std::ostringstream os;
    os << "no junction: requires 1 < sigma <= A_c = " << balance.A_c() << ", got sigma = " << config.sigma;
    throw ParameterError(os.str());
  }
  const double mn = balance.params().m - balance.params().n;
  const double target = mn * std::log1p(config.sigma_minus_one);
  auto residual = [&](double delta) { return balance.log_ratio_excess(delta) - target; };

  double delta = 0.5;
  double f = residual(0.5);
  if (f < 0.0) {
    const auto root = roots::bisect(residual, 1e-16, 0.5);
    delta = root.root;
    f = root.f_root;
  }
  // f >= 0 at delta = 1/2 happens only inside the tolerance band sigma ~ A_c.
  JunctionPoint jp;
  jp.delta_star = delta;
  jp.A_star = config.sigma / (2.0 * delta);
  jp.Delta_star = (1.0 - delta) / delta;
  jp.residual = std::abs(f);
  return jp;
}

inline JunctionPoint junction(const HardCoreConfig& config) {
  return junction(StationarityBalance(config.params), config);
}

inline JunctionPoint junction_from_excess(const MieParams& params, double sigma_minus_one) {
  return junction(HardCoreConfig::from_excess(params, sigma_minus_one));
}

namespace detail {

inline DeltaSolution boundary_solution(const HardCoreConfig& config, double A) {
  DeltaSolution sol;
  sol.A = A;
  sol.branch = DeltaBranch::boundary;
  sol.Delta = 2.0 * A / config.sigma - 1.0;
  // Round onto the feasible side so that the gap 2A/(1+Delta) is >= sigma.
  for (int k = 0; k < 8 && BipartiteChain(A, sol.Delta).min_gap() < config.sigma && sol.Delta > 1.0; ++k) {
    sol.Delta = std::nextafter(sol.Delta, 1.0);
  }
  sol.excess = 2.0 * (A - config.sigma) / config.sigma;
  sol.delta = config.sigma / (2.0 * A);
  sol.gap_to_asymptote = 2.0 * A * config.sigma_minus_one / config.sigma;
  return sol;
}

}  // namespace detail

/// Precomputed pieces for repeated constrained solves at one (params, sigma).
class HardCoreSolver {
 public:
  explicit HardCoreSolver(const HardCoreConfig& config)
      : config_(config), balance_(config.params), regime_(classify(config, balance_.A_c())) {
    if (regime_ == HardCoreRegime::junction) junction_ = junction(balance_, config_);
  }

  const HardCoreConfig& config() const { return config_; }
  HardCoreRegime regime() const { return regime_; }
  double A_c() const { return balance_.A_c(); }
  const std::optional<JunctionPoint>& junction_point() const { return junction_; }

  DeltaSolution solve(double A) const {
    if (!(A >= config_.sigma)) {
      std::ostringstream os;
      os << "infeasible: A = " << A << " < sigma = " << config_.sigma;
      throw InfeasibleError(os.str());
    }
    switch (regime_) {
      case HardCoreRegime::soft:
        return solve_delta(balance_, A);
      case HardCoreRegime::junction:
        if (A < junction_->A_star) return solve_delta(balance_, A);
        return detail::boundary_solution(config_, A);
      case HardCoreRegime::boundary:
        return detail::boundary_solution(config_, A);
    }
    return solve_delta(balance_, A);
  }

 private:
  HardCoreConfig config_;
  StationarityBalance balance_;
  HardCoreRegime regime_;
  std::optional<JunctionPoint> junction_;
};

inline DeltaSolution constrained_delta(const HardCoreConfig& config, double A) {
  return HardCoreSolver(config).solve(A);
}

inline std::vector<SweepPoint> hardcore_sweep(const HardCoreConfig& config, const std::vector<double>& A_grid) {
  const HardCoreSolver solver(config);
  std::vector<SweepPoint> out;
  out.reserve(A_grid.size());
  for (double A : A_grid) {
    SweepPoint p;
    p.A = A;
    try {
      p.solution = solver.solve(A);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Small-(sigma - 1) asymptote  A* ~ prefactor (sigma - 1)^{-1/(m+2)}.
inline double tau_theory_exponent(const MieParams& params) { return -1.0 / (params.m + 2.0); }

inline double tau_theory_prefactor(const MieParams& params) {
  const double m = params.m;
  return 0.5 * std::pow(2.0 * (m + 1.0) * specfun::riemann_zeta(m + 2.0) / (params.n - params.m), 1.0 / (m + 2.0));
}

struct TauPoint {
  double sigma_minus_one = 0.0;
  std::optional<JunctionPoint> junction;
  std::string error;
};

struct TauFit {
  std::optional<PowerLawFit> fit;
  double exponent_theory = 0.0;
  double prefactor_theory = 0.0;
  std::vector<TauPoint> points;
  std::size_t failures = 0;
};

inline TauFit fit_tau(const MieParams& params, std::pair<double, double> window = {1e-12, 1e-9},
                      int n_points = 20) {
  if (!(window.first > 0.0) || !(window.second > window.first)) {
    throw ParameterError("fit_tau: window must satisfy 0 < lo < hi");
  }
  if (n_points < kMinFitPoints) throw ParameterError("fit_tau: need at least 8 points");
  const StationarityBalance balance(params);
  TauFit out;
  out.exponent_theory = tau_theory_exponent(params);
  out.prefactor_theory = tau_theory_prefactor(params);
  std::vector<double> xs, ys;
  for (double excess : geometric_grid(window.first, window.second, n_points)) {
    TauPoint p;
    p.sigma_minus_one = excess;
    try {
      p.junction = junction(balance, HardCoreConfig::from_excess(params, excess));
      xs.push_back(excess);
      ys.push_back(p.junction->A_star);
    } catch (const std::exception& e) {
      p.error = e.what();
      ++out.failures;
    }
    out.points.push_back(std::move(p));
  }
  if (xs.size() >= static_cast<std::size_t>(kMinFitPoints)) out.fit = fit_power_law(xs, ys);
  return out;
}

}  // namespace chainlattice
