#pragma once

// Bipartite phase of the (n,m) Mie chain: the nontrivial stationary Delta(A)
// for A > A_c, the ground-state energy curve, and the order-parameter fit.
//
// With delta = 1/(1+Delta) the stationarity condition reads
//   (2A)^{m-n} = R(delta),
//   R(delta) = [zeta(m+1,delta) - zeta(m+1,1-delta)] / [zeta(n+1,delta) - zeta(n+1,1-delta)],
// and is solved by bisection in delta on (0, 1/2).

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chainlattice/errors.hpp"
#include "chainlattice/fit.hpp"
#include "chainlattice/landau.hpp"
#include "chainlattice/lattice_energy.hpp"
#include "chainlattice/potential.hpp"
#include "chainlattice/roots.hpp"
#include "chainlattice/specfun.hpp"

namespace chainlattice {

namespace detail {

// Odd part of the Hurwitz zeta around a = 1/2:
//   zeta(s, 1/2 - x) - zeta(s, 1/2 + x) = 2^{s+1} x sum_{k odd} w_k (2x)^{k-1},
//   w_k = (s)_k / k! (1 - 2^{-(s+k)}) zeta(s+k).
class HalfOddSeries {
 public:
  explicit HalfOddSeries(double s) {
    double rising = 1.0;  // (s)_k / k!
    for (int k = 1; k <= 2 * kTerms; ++k) {
      rising *= (s + k - 1.0) / k;
      if (k % 2 == 1) {
        weights_.push_back(rising * -std::expm1(-(s + k) * std::numbers::ln2) * specfun::riemann_zeta(s + k));
      }
    }
  }

  double leading() const { return weights_.front(); }

  /// sum_{k odd >= 3} w_k y^{k-1}, y = 2x.
  double higher(double x) const {
    const double y2 = 4.0 * x * x;
    double power = y2;
    double sum = 0.0;
    for (std::size_t i = 1; i < weights_.size(); ++i) {
      const double term = weights_[i] * power;
      sum += term;
      if (term <= 1e-18 * (sum + weights_.front())) break;
      power *= y2;
    }
    return sum;
  }

 private:
  static constexpr int kTerms = 120;
  std::vector<double> weights_;
};

}  // namespace detail

/// Log-form pieces of the stationarity ratio R(delta) for one (n,m) pair.
class StationarityBalance {
 public:
  explicit StationarityBalance(const MieParams& params)
      : params_(params), low_(params.m + 1.0), high_(params.n + 1.0), A_c_(critical_A(params)) {
    log_ratio_half_ = (params.m - params.n) * std::numbers::ln2 + std::log(low_.leading()) -
                      std::log(high_.leading());
  }

  const MieParams& params() const { return params_; }
  double A_c() const { return A_c_; }

  /// log R(1/2) = (m - n) log(2 A_c).
  double log_ratio_half() const { return log_ratio_half_; }

  /// log R(delta) - log R(1/2); zero at delta = 1/2, decreasing to -inf as delta -> 0.
  double shift(double delta) const {
    const double x = 0.5 - delta;
    if (x < kSeriesSwitch) {
      return std::log1p(low_.higher(x) / low_.leading()) - std::log1p(high_.higher(x) / high_.leading());
    }
    return (params_.n - params_.m) * std::log(delta) + scaled_difference(delta) - log_ratio_half_;
  }

  /// log R(delta) + (m - n) log delta; tends to 0 as delta -> 0.
  double log_ratio_excess(double delta) const {
    const double x = 0.5 - delta;
    if (x < kSeriesSwitch) {
      return log_ratio_half_ + shift(delta) + (params_.m - params_.n) * std::log(delta);
    }
    return scaled_difference(delta);
  }

 private:
  static constexpr double kSeriesSwitch = 0.05;

  // log1p(delta^{s} c_s) at s = m+1 minus the same at s = n+1, where
  // delta^s [zeta(s,delta) - zeta(s,1-delta)] = 1 + delta^s c_s,
  // c_s = zeta(s, 1+delta) - zeta(s, 1-delta).
  double scaled_difference(double delta) const {
    auto term = [delta](double s) {
      const double c = specfun::hurwitz_zeta(s, 1.0 + delta) - specfun::hurwitz_zeta(s, 1.0 - delta);
      return std::log1p(std::pow(delta, s) * c);
    };
    return term(params_.m + 1.0) - term(params_.n + 1.0);
  }

  MieParams params_;
  detail::HalfOddSeries low_;
  detail::HalfOddSeries high_;
  double A_c_;
  double log_ratio_half_ = 0.0;
};

enum class DeltaBranch { trivial, bipartite, boundary };

inline const char* to_string(DeltaBranch b) {
  switch (b) {
    case DeltaBranch::trivial: return "trivial";
    case DeltaBranch::bipartite: return "bipartite";
    case DeltaBranch::boundary: return "boundary";
  }
  return "?";
}

struct DeltaSolution {
  double A = 0.0;
  double Delta = 1.0;
  double excess = 0.0;  // Delta - 1, computed without cancellation
  double delta = 0.5;   // 1/(1+Delta)
  double residual = 0.0;
  double gap_to_asymptote = 0.0;  // (2A - 1) - Delta
  DeltaBranch branch = DeltaBranch::trivial;
};

inline constexpr double kOnsetRelTolerance = 1e-14;

namespace detail {

inline DeltaSolution trivial_solution(double A) {
  DeltaSolution sol;
  sol.A = A;
  sol.gap_to_asymptote = 2.0 * A - 2.0;
  return sol;
}

inline DeltaSolution solution_from_delta(const StationarityBalance& balance, double A, double delta,
                                         double residual, DeltaBranch branch) {
  DeltaSolution sol;
  sol.A = A;
  sol.delta = delta;
  sol.Delta = (1.0 - delta) / delta;
  sol.excess = 2.0 * (0.5 - delta) / delta;
  sol.residual = residual;
  sol.branch = branch;
  if (branch == DeltaBranch::bipartite) {
    // At a root (m-n) log(2A delta) = log_ratio_excess(delta).
    const double nm = balance.params().n - balance.params().m;
    sol.gap_to_asymptote = std::expm1(-balance.log_ratio_excess(delta) / nm) / delta;
  } else {
    sol.gap_to_asymptote = 2.0 * A - 1.0 - sol.Delta;
  }
  return sol;
}

}  // namespace detail

/// Stationary Delta >= 1 at A = A_c + offset.  Taking the offset from the
/// critical point directly keeps Delta - 1 accurate close to the onset.
inline DeltaSolution solve_delta_offset(const StationarityBalance& balance, double offset) {
  const double A_c = balance.A_c();
  const double A = A_c + offset;
  if (!(A > 0.0)) throw ParameterError("solve_delta requires A > 0");
  if (offset <= kOnsetRelTolerance * A_c) return detail::trivial_solution(A);

  const double nm = balance.params().n - balance.params().m;
  const double drive = nm * std::log1p(offset / A_c);
  auto residual = [&](double delta) { return balance.shift(delta) + drive; };
  roots::BisectionResult root{};
  try {
    root = roots::bisect(residual, 1e-16, 0.5);
  } catch (const BracketError& e) {
    std::ostringstream os;
    os << "solve_delta: bracketing failed at A = " << A << ": " << e.what();
    throw BracketError(os.str());
  }
  return detail::solution_from_delta(balance, A, root.root, std::abs(root.f_root), DeltaBranch::bipartite);
}

inline DeltaSolution solve_delta_offset(const MieParams& params, double offset) {
  return solve_delta_offset(StationarityBalance(params), offset);
}

inline DeltaSolution solve_delta(const StationarityBalance& balance, double A) {
  if (!(A > 0.0)) throw ParameterError("solve_delta requires A > 0");
  return solve_delta_offset(balance, A - balance.A_c());
}

inline DeltaSolution solve_delta(const MieParams& params, double A) {
  return solve_delta(StationarityBalance(params), A);
}

struct SweepPoint {
  double A = 0.0;
  std::optional<DeltaSolution> solution;
  std::string error;
};

inline std::vector<SweepPoint> delta_sweep(const MieParams& params, const std::vector<double>& A_grid) {
  for (std::size_t i = 1; i < A_grid.size(); ++i) {
    if (!(A_grid[i] > A_grid[i - 1])) throw ParameterError("delta_sweep: grid must be strictly ascending");
  }
  const StationarityBalance balance(params);
  std::vector<SweepPoint> out;
  out.reserve(A_grid.size());
  for (double A : A_grid) {
    SweepPoint p;
    p.A = A;
    try {
      p.solution = solve_delta(balance, A);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct BetaFit {
  PowerLawFit fit;
  double amplitude_theory = 0.0;  // sqrt(-E2'(A_c) / (2 E4(A_c)))
  double A_c = 0.0;
  std::vector<double> offsets;   // A - A_c
  std::vector<double> excesses;  // Delta - 1
};

/// Landau amplitude of eps ~ amplitude * sqrt(A - A_c).
inline double landau_amplitude(const MieParams& params) {
  const double A_c = critical_A(params);
  const auto spec = mie_potential(params);
  const double slope = landau_E2_slope(spec, A_c);
  const double e4 = landau_E2_E4_closed(params, A_c).E4;
  return std::sqrt(-slope / (2.0 * e4));
}

inline BetaFit fit_beta(const MieParams& params, std::pair<double, double> window = {1e-8, 1e-4},
                        int n_points = 20) {
  if (!(window.first > 0.0) || !(window.second > window.first)) {
    throw ParameterError("fit_beta: window must satisfy 0 < lo < hi");
  }
  if (n_points < kMinFitPoints) throw ParameterError("fit_beta: need at least 8 points");
  const StationarityBalance balance(params);
  BetaFit out;
  out.A_c = balance.A_c();
  for (double offset : geometric_grid(window.first, window.second, n_points)) {
    const auto sol = solve_delta_offset(balance, offset);
    if (sol.branch != DeltaBranch::bipartite || !(sol.excess > 0.0)) continue;
    out.offsets.push_back(offset);
    out.excesses.push_back(sol.excess);
  }
  if (static_cast<int>(out.offsets.size()) < n_points) {
    throw ParameterError("fit_beta: degenerate fit, only " + std::to_string(out.offsets.size()) +
                         " solvable points");
  }
  out.fit = fit_power_law(out.offsets, out.excesses);
  out.amplitude_theory = landau_amplitude(params);
  return out;
}

enum class Phase { equidistant, bipartite };

inline const char* to_string(Phase p) { return p == Phase::equidistant ? "eq" : "bip"; }

struct EnergyCurveRow {
  double A = 0.0;
  double E_ground = 0.0;
  double E_equidistant = 0.0;  // continuation of the equidistant branch
  Phase phase = Phase::equidistant;
  double Delta = 1.0;
};

inline std::vector<EnergyCurveRow> energy_curve(const MieParams& params, const std::vector<double>& A_grid) {
  const StationarityBalance balance(params);
  const auto spec = mie_potential(params);
  std::vector<EnergyCurveRow> rows;
  rows.reserve(A_grid.size());
  for (double A : A_grid) {
    EnergyCurveRow row;
    row.A = A;
    row.E_equidistant = equidistant_energy(spec, A).value;
    const auto sol = solve_delta(balance, A);
    if (sol.branch == DeltaBranch::trivial) {
      row.E_ground = row.E_equidistant;
    } else {
      row.phase = Phase::bipartite;
      row.Delta = sol.Delta;
      row.E_ground = bipartite_energy(spec, BipartiteChain(A, sol.Delta)).value;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace chainlattice
