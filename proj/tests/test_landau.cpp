#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chainlattice/landau.hpp"
#include "chainlattice/oracle.hpp"

using namespace chainlattice;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Reference {
  double n, m, A;
  double E2, E4, E6;
};

// Taylor coefficients of eps -> E(A, e^eps) from 40-digit numerical
// differentiation of the Hurwitz form.
const Reference kReference[] = {
    {12, 6, 1.1, 0.285406237461767148, 18.2450086573528462, 47.3748401035998588},
    {7, 6, 2.0, -0.246166009067483018, -0.205077274077963866, -0.0365713049217206263},
    {6, 2, 0.8, 8.23152049247051473, 12.9152246233198662, 8.94428524921317603},
};

}  // namespace

TEST(Landau, ClosedFormMatchesReference) {
  for (const auto& r : kReference) {
    const auto c = landau_coefficients_closed(mie_potential(MieParams(r.n, r.m)), r.A);
    EXPECT_LT(rel(c.E2, r.E2), 1e-12);
    EXPECT_LT(rel(c.E4, r.E4), 1e-12);
    EXPECT_LT(rel(c.E6, r.E6), 1e-12);
  }
}

TEST(Landau, QuadratureMatchesReference) {
  for (const auto& r : kReference) {
    const auto q = landau_coefficients_quadrature(mie_potential(MieParams(r.n, r.m)), r.A);
    EXPECT_EQ(q.method, LandauMethod::quadrature);
    EXPECT_LT(rel(q.E2, r.E2), 1e-10);
    EXPECT_LT(rel(q.E4, r.E4), 1e-10);
    EXPECT_LT(rel(q.E6, r.E6), 1e-10);
  }
}

TEST(Landau, MieSpecializationAgreesWithGeneralForm) {
  for (auto [n, m] : {std::pair{12.0, 6.0}, {7.0, 6.0}, {6.0, 2.0}, {9.5, 3.5}}) {
    const MieParams p(n, m);
    for (double A : {0.9, 1.1, 1.7}) {
      const auto mie = landau_E2_E4_closed(p, A);
      const auto general = landau_coefficients_closed(mie_potential(p), A);
      EXPECT_NEAR(mie.E2, general.E2, 1e-13 * std::abs(general.E2) + 1e-15);
      EXPECT_NEAR(mie.E4, general.E4, 1e-13 * std::abs(general.E4) + 1e-15);
      EXPECT_TRUE(std::isnan(mie.E6));
    }
  }
}

TEST(Landau, FiniteDifferenceOracle) {
  for (auto [n, m] : {std::pair{12.0, 6.0}, {7.0, 6.0}, {6.0, 2.0}}) {
    const auto spec = mie_potential(MieParams(n, m));
    for (double A : {0.8, 1.35, 3.0}) {
      const auto q = landau_coefficients_quadrature(spec, A);
      auto energy = [&](double eps) { return bipartite_energy(spec, BipartiteChain::from_epsilon(A, eps)).value; };
      EXPECT_LT(rel(oracle::richardson_derivative(energy, 0.0, 2, 0.2).value / 2.0, q.E2), 1e-6);
      EXPECT_LT(rel(oracle::richardson_derivative(energy, 0.0, 4, 0.2).value / 24.0, q.E4), 1e-5);
      EXPECT_LT(rel(oracle::richardson_derivative(energy, 0.0, 6, 0.2).value / 720.0, q.E6), 1e-3);
    }
  }
}

TEST(Landau, SlopeOfE2) {
  const auto spec = mie_potential(MieParams(12, 6));
  for (double A : {0.9, 1.1086, 2.0}) {
    const double h = 1e-5;
    const double fd = (landau_coefficients_closed(spec, A + h).E2 - landau_coefficients_closed(spec, A - h).E2) / (2 * h);
    EXPECT_NEAR(landau_E2_slope(spec, A), fd, 1e-8 * std::abs(fd));
  }
}

TEST(CriticalPoint, ReferenceValues) {
  const auto lj = critical_point(MieParams(12, 6));
  EXPECT_NEAR(lj.A_c, 1.10865478515, 1e-10);
  EXPECT_TRUE(lj.sign_change_verified);
  EXPECT_GT(lj.E4_at_Ac, 0.0);
  const auto p76 = critical_point(MieParams(7, 6));
  EXPECT_NEAR(p76.A_c, 1.1427384940215781, 1e-10);
  EXPECT_TRUE(p76.sign_change_verified);
  EXPECT_GT(p76.E4_at_Ac, 0.0);
  // E2 vanishes there.
  EXPECT_NEAR(landau_E2_E4_closed(MieParams(12, 6), lj.A_c).E2, 0.0, 1e-13);
}

TEST(CriticalPoint, Limits) {
  const double a200 = critical_A(MieParams(200, 6));
  EXPECT_GT(a200, 0.98);
  EXPECT_LT(a200, 1.02);
  // exp(ln2/(2^{2+m}-1) + 1/(1+m) + zeta'(m+2)/zeta(m+2)) at 30 digits.
  EXPECT_NEAR(critical_point_limit_n_to_m(2), 1.3714565913675824662, 1e-13);
  EXPECT_NEAR(critical_point_limit_n_to_m(6), 1.1533666632856944404, 1e-13);
  EXPECT_NEAR(critical_point_limit_n_to_m(12), 1.0799587510817590271, 1e-13);
  for (double m : {2.0, 6.0, 12.0}) {
    EXPECT_NEAR(critical_point_limit_n_to_m(m), critical_A(MieParams(m + 1e-6, m)), 1e-5);
  }
}

TEST(Tricritical, NoTricriticalPointOnIntegerPairs) {
  std::vector<double> grid;
  for (int k = 2; k <= 14; ++k) grid.push_back(k);
  const auto report = tricritical_scan(grid, grid);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.g_violations, 0u);
  EXPECT_EQ(report.g_points, 5900u);
  EXPECT_EQ(report.pairs_checked, 78u);
  EXPECT_LT(report.max_g_difference, 0.0);
  EXPECT_GT(report.min_E4_at_Ac, 0.0);
  EXPECT_THROW(tricritical_scan({0.5}, grid), ParameterError);
}

TEST(Tricritical, RandomPairsKeepPositiveE4) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(1.2, 40.0);
  for (int i = 0; i < 1000; ++i) {
    double m = d(rng), n = d(rng);
    if (n < m) std::swap(n, m);
    if (n - m < 1e-3) continue;
    const MieParams p(n, m);
    const double A_c = critical_A(p);
    ASSERT_GT(landau_E2_E4_closed(p, A_c).E4, 0.0) << n << " " << m;
    ASSERT_GT(tricritical_g(m), tricritical_g(n)) << n << " " << m;
  }
}
