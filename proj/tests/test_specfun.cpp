#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/zeta.hpp>
#include <gtest/gtest.h>

#include "chainlattice/errors.hpp"
#include "chainlattice/specfun.hpp"

using namespace chainlattice;
using specfun::ThetaKind;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Plain summation up to N with a first-order integral tail; independent of
// the Euler-Maclaurin bookkeeping in the library.
double hurwitz_brute(double s, double a) {
  const long N = 200000;
  double sum = 0.0;
  for (long j = N - 1; j >= 0; --j) sum += std::pow(j + a, -s);
  const double x = N + a;
  return sum + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) + s / 12.0 * std::pow(x, -s - 1.0);
}

double theta_direct(double phi, double x) {
  double sum = 0.0;
  for (int j = -2000; j <= 2000; ++j) sum += std::exp(-(j + phi) * (j + phi) * x);
  return sum;
}

}  // namespace

TEST(HurwitzZeta, MatchesHighPrecisionValues) {
  // 30-digit reference values.
  struct Case {
    double s, a, value;
  };
  const Case cases[] = {
      {1.5, 0.25, 10.213055360466600739}, {2.0, 1.0, 1.6449340668482264365},
      {3.0, 0.5, 8.4143983221171599978},  {6.5, 0.1, 3162278.2072014652614},
      {13.0, 0.75, 42.093083674551111504}, {7.0, 1.9, 0.011860960802078489772},
      {1.1, 3.0, 9.1179319691823972717},  {25.0, 0.3, 11802353871573.844902},
  };
  for (const auto& c : cases) EXPECT_LT(rel(specfun::hurwitz_zeta(c.s, c.a), c.value), 2e-14) << c.s << " " << c.a;
}

TEST(HurwitzZeta, MatchesDirectSummation) {
  for (double s : {2.0, 3.3, 6.0, 12.0}) {
    for (double a : {0.2, 0.5, 1.0, 2.7}) {
      EXPECT_LT(rel(specfun::hurwitz_zeta(s, a), hurwitz_brute(s, a)), 1e-12) << s << " " << a;
    }
  }
}

TEST(RiemannZeta, AgreesWithBoost) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1.05, 60.0);
  for (int i = 0; i < 1000; ++i) {
    const double s = dist(rng);
    EXPECT_LT(rel(specfun::riemann_zeta(s), boost::math::zeta(s)), 1e-13) << s;
  }
  EXPECT_LT(rel(specfun::riemann_zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0), 1e-15);
}

TEST(RiemannZeta, LogDerivativeReference) {
  struct Case {
    double s, value;
  };
  const Case cases[] = {{2.0, -0.5699609930945328064},
                        {3.5, -0.100395641676643919},
                        {6.0, -0.012633069032511060824},
                        {8.0, -0.0028901683080467563835},
                        {14.0, -0.000042538887954226155498}};
  for (const auto& c : cases) EXPECT_LT(rel(specfun::zeta_log_derivative(c.s), c.value), 1e-12) << c.s;
}

TEST(HurwitzZeta, RandomizedIdentities) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> s_dist(1.1, 40.0);
  std::uniform_real_distribution<double> a_dist(0.01, 5.0);
  for (int i = 0; i < 1500; ++i) {
    const double s = s_dist(rng);
    const double a = a_dist(rng);
    const double z = specfun::riemann_zeta(s);
    ASSERT_LT(rel(specfun::hurwitz_zeta(s, 1.0), z), 1e-12) << s;
    ASSERT_LT(rel(specfun::hurwitz_zeta(s, 0.5), std::expm1(s * std::numbers::ln2) * z), 1e-12) << s;
    ASSERT_LT(rel(specfun::hurwitz_zeta(s, a), specfun::hurwitz_zeta(s, a + 1.0) + std::pow(a, -s)), 1e-12)
        << s << " " << a;
  }
}

TEST(HurwitzZeta, RejectsBadArguments) {
  EXPECT_THROW(specfun::hurwitz_zeta(1.0, 1.0), DomainError);
  EXPECT_THROW(specfun::hurwitz_zeta(0.5, 1.0), DomainError);
  EXPECT_THROW(specfun::hurwitz_zeta(2.0, 0.0), DomainError);
  EXPECT_THROW(specfun::hurwitz_zeta(2.0, -1.0), DomainError);
  EXPECT_THROW(specfun::riemann_zeta(std::nan("")), DomainError);
}

TEST(Theta, ReferenceValues) {
  struct Case {
    double x, t3, t2;
  };
  const Case cases[] = {{0.01, 17.724538509055160088, 17.724538509055160088},
                        {0.3, 3.2360431875928655178, 3.2360431875927987821},
                        {1.0, 1.772637204826652153, 1.7722704969843799523},
                        {3.14, 1.0865726150645709285, 0.91394839940992367484},
                        {5.0, 1.0134758981204781791, 0.57303560831574195597},
                        {20.0, 1.0000000041223072449, 0.013475893998170934251}};
  for (const auto& c : cases) {
    EXPECT_LT(rel(specfun::theta3(c.x), c.t3), 1e-14) << c.x;
    EXPECT_LT(rel(specfun::theta2(c.x), c.t2), 1e-14) << c.x;
  }
}

TEST(Theta, BothBranchesAgreeAcrossSwitch) {
  for (double phi : {0.0, 0.13, 0.5, 0.77}) {
    for (double x : {0.5, 2.0, 3.1, 3.2, 6.0}) {
      EXPECT_LT(rel(specfun::shifted_theta(phi, x), theta_direct(phi, x)), 1e-13) << phi << " " << x;
    }
  }
}

TEST(Theta, RandomizedQuarterNomeIdentity) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> logx(std::log(0.005), std::log(80.0));
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(logx(rng));
    ASSERT_LT(rel(specfun::theta2(x) + specfun::theta3(x), specfun::theta3(0.25 * x)), 1e-12) << x;
  }
}

TEST(Theta, MinusOneHasNoCancellation) {
  for (double x : {0.1, 1.0, 3.0, 10.0, 40.0, 200.0}) {
    const double expected = 2.0 * (std::exp(-x) + std::exp(-4.0 * x) + std::exp(-9.0 * x) + std::exp(-16.0 * x));
    if (x >= 3.0) {
      EXPECT_LT(rel(specfun::theta3_minus_one(x), expected), 1e-14) << x;
    }
    if (x <= 10.0) {
      EXPECT_LT(rel(specfun::theta3_minus_one(x), theta_direct(0.0, x) - 1.0), 1e-11) << x;
    }
  }
}

TEST(Theta, DerivativesMatchFiniteDifferences) {
  for (auto kind : {ThetaKind::theta2, ThetaKind::theta3}) {
    for (double x : {0.2, 1.0, 2.5, 4.0, 9.0}) {
      for (int k = 1; k <= 3; ++k) {
        const double h = 1e-3 * x;
        auto f = [&](double y) { return specfun::theta_derivative(kind, k - 1, y); };
        const double fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
        const double exact = specfun::theta_derivative(kind, k, x);
        EXPECT_NEAR(exact, fd, 1e-8 * (std::abs(exact) + std::abs(f(x)) / x)) << x << " order " << k;
      }
    }
  }
}

TEST(Theta, OscillatoryPartDropsMean) {
  for (double x : {0.3, 1.0, 5.0}) {
    for (int k = 0; k <= 3; ++k) {
      const double full = specfun::theta_derivative(ThetaKind::theta3, k, x);
      const double osc = specfun::theta_derivative_oscillatory(ThetaKind::theta3, k, x);
      // d^k/dx^k sqrt(pi/x)
      double mean = std::sqrt(std::numbers::pi / x);
      for (int i = 0; i < k; ++i) mean *= -(0.5 + i) / x;
      EXPECT_NEAR(full - osc, mean, 1e-13 * std::abs(mean) + 1e-15) << x << " " << k;
    }
  }
}

TEST(Theta, RejectsBadArguments) {
  EXPECT_THROW(specfun::theta3(0.0), DomainError);
  EXPECT_THROW(specfun::theta2(-1.0), DomainError);
  EXPECT_THROW(specfun::theta_derivative(ThetaKind::theta3, 4, 1.0), ParameterError);
  EXPECT_THROW(specfun::theta_derivative(ThetaKind::theta3, -1, 1.0), ParameterError);
}
