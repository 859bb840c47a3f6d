#include "fbm/special_functions.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fbm/errors.hpp"
#include "oracles.hpp"

namespace fbm::special {
namespace {

constexpr double kGamma = static_cast<double>(oracle::kEulerL);

TEST(Gamma, IntegerAndHalfIntegerAnchors) {
  EXPECT_NEAR(gamma(1.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma(2.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma(5.0), 24.0, 24.0 * 1e-14);
  // Gamma(1/2)^2 = pi from the reflection formula at x = 1/2.
  EXPECT_NEAR(gamma(0.5), std::sqrt(kPi), 1e-12 * std::sqrt(kPi));
  // Duplication: Gamma(x) Gamma(x + 1/2) = 2^(1 - 2x) sqrt(pi) Gamma(2x).
  for (double x : {0.3, 1.7, 4.2, 11.5}) {
    const double lhs = gamma(x) * gamma(x + 0.5);
    const double rhs = std::pow(2.0, 1.0 - 2.0 * x) * std::sqrt(kPi) * gamma(2.0 * x);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << x;
  }
}

TEST(Gamma, AgreesWithLogGammaOnRange) {
  for (double x = 1e-3; x <= 50.0; x *= 1.37) {
    EXPECT_NEAR(std::log(gamma(x)), log_gamma(x), 1e-12 * std::max(1.0, std::abs(log_gamma(x))))
        << x;
  }
}

TEST(Digamma, Anchors) {
  EXPECT_NEAR(digamma(1.0), -kGamma, 1e-12);
  EXPECT_NEAR(digamma(2.0), 1.0 - kGamma, 1e-12);
  // psi(1/2) = -gamma - 2 log 2 (reflection plus duplication).
  EXPECT_NEAR(digamma(0.5), -kGamma - 2.0 * std::log(2.0), 1e-12);
}

TEST(Trigamma, Anchors) {
  const double zeta2 = static_cast<double>(oracle::zeta2_partial_sums());
  EXPECT_NEAR(trigamma(1.0), zeta2, 1e-10);
  EXPECT_NEAR(trigamma(2.0), zeta2 - 1.0, 1e-10);
  const double big = 1e6;
  EXPECT_NEAR(trigamma(big) * big, 1.0, 1e-6);
}

TEST(GammaDerivatives, Anchors) {
  EXPECT_NEAR(gamma_d1(1.0), -kGamma, 1e-12);
  EXPECT_NEAR(gamma_d1(2.0), 1.0 - kGamma, 1e-12);
  EXPECT_NEAR(gamma_d2(2.0), (1.0 - kGamma) * (1.0 - kGamma) + kZeta2 - 1.0, 1e-12);
  EXPECT_NEAR(gamma_d2(1.0), kGamma * kGamma + kZeta2, 1e-12);
  EXPECT_NEAR(gamma_d1(3.0), 3.0 - 2.0 * kGamma, 1e-12);
  EXPECT_NEAR(gamma_d2(3.0), 2.0 * ((1.5 - kGamma) * (1.5 - kGamma) + kZeta2 - 1.25), 1e-12);
}

TEST(Recurrences, HoldAcrossRange) {
  for (double x = 0.01; x <= 40.0; x *= 1.21) {
    EXPECT_NEAR(gamma(x + 1.0) / (x * gamma(x)), 1.0, 1e-10) << x;
    EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-10 * std::max(1.0, 1.0 / x)) << x;
    EXPECT_NEAR(trigamma(x + 1.0), trigamma(x) - 1.0 / (x * x),
                1e-10 * std::max(1.0, 1.0 / (x * x)))
        << x;
  }
}

TEST(GammaDerivatives, MatchFiniteDifferences) {
  for (double x = 0.5; x <= 10.0; x += 0.37) {
    const double h = 1e-5 * x;
    const double d1 = oracle::central_diff([](double t) { return gamma(t); }, x, h);
    const double d2 = (gamma(x + h) - 2.0 * gamma(x) + gamma(x - h)) / (h * h);
    EXPECT_NEAR(gamma_d1(x), d1, 1e-5 * std::max(1.0, std::abs(d1))) << x;
    EXPECT_NEAR(gamma_d2(x), d2, 1e-5 * std::max(1.0, std::abs(d2))) << x;
  }
}

TEST(DigammaIncrementRatio, SeriesBranchMatchesDirectBranch) {
  EXPECT_DOUBLE_EQ(digamma_increment_ratio(0.0), kZeta2);
  // Both branches near the switch point.
  for (double x : {0.0999, 0.1, 0.1001}) {
    const double direct = (digamma(1.0 + x) + kGamma) / x;
    EXPECT_NEAR(digamma_increment_ratio(x), direct, 1e-12) << x;
  }
  // psi(2) - psi(1) = 1.
  EXPECT_NEAR(digamma_increment_ratio(1.0), 1.0, 1e-14);
}

TEST(GammaOnePlusMinusOne, SmallAndModerateArguments) {
  // Gamma(1 + x) - 1 = -gamma x + (gamma^2 + pi^2/6) x^2 / 2 + O(x^3).
  for (double x : {1e-12, 1e-9, 1e-6}) {
    const double series = -kGamma * x + 0.5 * (kGamma * kGamma + kZeta2) * x * x;
    EXPECT_NEAR(gamma_1p_minus_1(x) / series, 1.0, 1e-5) << x;
  }
  EXPECT_EQ(gamma_1p_minus_1(0.0), 0.0);
  EXPECT_NEAR(gamma_1p_minus_1(1.0), 0.0, 1e-16);
  EXPECT_NEAR(gamma_1p_minus_1(2.5), gamma(3.5) - 1.0, 1e-14);
  EXPECT_THROW(gamma_1p_minus_1(-0.5), DomainError);
}

TEST(SpecialFunctions, RejectNonPositiveArguments) {
  for (double bad : {0.0, -1.0, -0.5, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::infinity()}) {
    EXPECT_THROW(gamma(bad), DomainError);
    EXPECT_THROW(log_gamma(bad), DomainError);
    EXPECT_THROW(digamma(bad), DomainError);
    EXPECT_THROW(trigamma(bad), DomainError);
    EXPECT_THROW(gamma_d1(bad), DomainError);
    EXPECT_THROW(gamma_d2(bad), DomainError);
  }
  EXPECT_THROW(digamma_increment_ratio(-1e-3), DomainError);
}

}  // namespace
}  // namespace fbm::special
