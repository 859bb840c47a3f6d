#pragma once

// Gamma-family special functions on the positive half-line.
// Every function throws fbm::DomainError for x <= 0 or non-finite x.

namespace fbm::special {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
/// pi^2 / 6 = zeta(2) = psi'(1)
inline constexpr double kZeta2 = kPi * kPi / 6.0;

double gamma(double x);
double log_gamma(double x);
double digamma(double x);
double trigamma(double x);

/// Gamma'(x) = Gamma(x) psi(x)
double gamma_d1(double x);
/// Gamma''(x) = Gamma(x) (psi(x)^2 + psi'(x))
double gamma_d2(double x);

/// Gamma(1 + x) - 1 for x >= 0, without cancellation near 0.
double gamma_1p_minus_1(double x);

/// (psi(1 + x) - psi(1)) / x for x > 0, and its limit pi^2/6 at x = 0.
/// Accurate for small x where the direct difference cancels.
double digamma_increment_ratio(double x);

}  // namespace fbm::special
