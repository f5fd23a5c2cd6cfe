#pragma once

// Brute-force validators: truncated direct lattice sums with rigorous
// truncation bounds, and central finite differences with Richardson
// extrapolation.  Neither uses the zeta or theta machinery.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "chainlattice/errors.hpp"
#include "chainlattice/lattice_energy.hpp"
#include "chainlattice/potential.hpp"

namespace chainlattice::oracle {

struct TruncationPlan {
  long J_max = 0;
  double tail_bound = 0.0;
  double target_rel = 0.0;
  bool converged = false;
};

namespace detail {

struct Progression {
  double start;
  double step;
  double weight;
};

// sum_{j=0}^{J} f(start + step j) plus, per Riesz component, the midpoint
// integral int_{J+1/2}^inf c (start + step x)^{-s} dx.  For convex
// decreasing summands the remaining error is at most |g'(J - 1/2)| / 24.
inline std::pair<double, double> progression_sum(const PotentialSpec& spec, const Progression& p, long J) {
  double partial = 0.0;
  for (long j = J; j >= 0; --j) {
    const double r = p.start + p.step * static_cast<double>(j);
    double f = 0.0;
    for (const auto& c : spec.components()) f += c.coefficient * std::pow(r, -c.exponent);
    partial += f;
  }
  double tail = 0.0;
  double bound = 0.0;
  const double r_tail = p.start + p.step * (static_cast<double>(J) + 0.5);
  const double r_bound = p.start + p.step * (static_cast<double>(J) - 0.5);
  for (const auto& c : spec.components()) {
    const double s = c.exponent;
    tail += c.coefficient * std::pow(r_tail, 1.0 - s) / (p.step * (s - 1.0));
    bound += std::abs(c.coefficient) * s * p.step * std::pow(r_bound, -s - 1.0) / 24.0;
  }
  return {p.weight * (partial + tail), std::abs(p.weight) * bound};
}

inline std::array<Progression, 3> bipartite_progressions(const BipartiteChain& chain) {
  const double period = 2.0 * chain.A();
  // (1/2) sum' f(2|j|A) + (1/4) sum_j [f(|a+2jA|) + f(|b+2jA|)], with the
  // negative-j terms of each shifted sum folded onto the other gap.
  return {{{period, period, 1.0}, {chain.a(), period, 0.5}, {chain.b(), period, 0.5}}};
}

}  // namespace detail

/// Direct sum truncated at a fixed J for every arithmetic progression.
inline std::pair<EnergyResult, TruncationPlan> direct_bipartite_sum_fixed(const PotentialSpec& spec,
                                                                          const BipartiteChain& chain, long J) {
  if (!spec.feasible(chain.min_gap())) {
    return {{kHardCoreInfinity, EnergyMethod::brute_force, 0.0}, {J, 0.0, 0.0, true}};
  }
  double total = 0.0;
  double bound = 0.0;
  for (const auto& p : detail::bipartite_progressions(chain)) {
    const auto [v, b] = detail::progression_sum(spec, p, J);
    total += v;
    bound += b;
  }
  TruncationPlan plan{J, bound, 0.0, true};
  return {{total, EnergyMethod::brute_force, bound}, plan};
}

/// Direct bipartite lattice sum, doubling J until the truncation bound is
/// below target_rel * |sum|.
inline std::pair<EnergyResult, TruncationPlan> direct_bipartite_sum_with_plan(const PotentialSpec& spec,
                                                                              const BipartiteChain& chain,
                                                                              double target_rel = 1e-11) {
  if (!(target_rel >= 1e-12)) throw ParameterError("direct sum target_rel must be >= 1e-12");
  constexpr long kMaxJ = 1L << 26;
  long J = 64;
  while (true) {
    auto [result, plan] = direct_bipartite_sum_fixed(spec, chain, J);
    plan.target_rel = target_rel;
    if (result.infeasible()) return {result, plan};
    plan.converged = plan.tail_bound <= target_rel * std::abs(result.value);
    if (plan.converged || J >= kMaxJ) return {result, plan};
    J *= 2;
  }
}

inline EnergyResult direct_bipartite_sum(const PotentialSpec& spec, const BipartiteChain& chain,
                                         double target_rel = 1e-11) {
  return direct_bipartite_sum_with_plan(spec, chain, target_rel).first;
}

struct DerivativeEstimate {
  double value;
  double est_error;
};

namespace detail {

// Second-order accurate central stencils, coefficients for offsets -p..p.
inline std::vector<double> central_stencil(int order) {
  switch (order) {
    case 1: return {-0.5, 0.0, 0.5};
    case 2: return {1.0, -2.0, 1.0};
    case 3: return {-0.5, 1.0, 0.0, -1.0, 0.5};
    case 4: return {1.0, -4.0, 6.0, -4.0, 1.0};
    case 5: return {-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5};
    case 6: return {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0};
    default: throw ParameterError("richardson_derivative: order must be 1..6");
  }
}

}  // namespace detail

/// order-th derivative of fn at x0 from central differences at steps
/// h0, h0/sqrt2, ..., extrapolated in h^2; returns the tableau entry with the
/// smallest error estimate.
inline DerivativeEstimate richardson_derivative(const std::function<double(double)>& fn, double x0, int order,
                                                double h0) {
  const auto stencil = detail::central_stencil(order);
  const int half = static_cast<int>(stencil.size() / 2);
  if (!(h0 > 0.0)) throw ParameterError("richardson_derivative: h0 must be positive");

  auto raw = [&](double h) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) {
      const double c = stencil[static_cast<std::size_t>(k + half)];
      if (c == 0.0) continue;
      const double v = fn(x0 + k * h);
      if (!std::isfinite(v)) throw DomainError("richardson_derivative: non-finite function value");
      acc += c * v;
    }
    return acc / std::pow(h, order);
  };

  constexpr int kLevels = 10;
  constexpr double kStepRatio = std::numbers::sqrt2 / 2.0;
  std::array<std::array<double, kLevels>, kLevels> table{};
  DerivativeEstimate best{0.0, std::numeric_limits<double>::infinity()};
  double h = h0;
  for (int i = 0; i < kLevels; ++i, h *= kStepRatio) {
    table[i][0] = raw(h);
    if (i == 0) best.value = table[0][0];
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 2.0;  // (h_{i-1}/h_i)^2
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
      const double err = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                  std::abs(table[i][j] - table[i - 1][j - 1]));
      if (err <= best.est_error) best = {table[i][j], err};
    }
  }
  return best;
}

}  // namespace chainlattice::oracle
