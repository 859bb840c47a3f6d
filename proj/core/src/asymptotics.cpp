#include "fbm/asymptotics.hpp"

#include <cmath>

#include "fbm/errors.hpp"
#include "fbm/special_functions.hpp"

namespace fbm::asymptotics {
namespace {

using special::kEulerGamma;
using special::kPi;
using special::kZeta2;

constexpr double kSixOverPi2 = 6.0 / (kPi * kPi);
// Gamma''(2) = (1 - gamma)^2 + pi^2/6 - 1
constexpr double kGammaD2At2 = (1.0 - kEulerGamma) * (1.0 - kEulerGamma) + kZeta2 - 1.0;

void require_alpha0(double alpha0) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw DomainError("alpha0 must be positive and finite");
  }
}

void require_rho(double rho) {
  if (!(rho <= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be finite and <= 0");
}

}  // namespace

Matrix2 fisher_info(const FrechetParams& theta) {
  validate(theta);
  const double a = theta.alpha;
  const double s = theta.sigma;
  const double g = 1.0 - kEulerGamma;
  Matrix2 m;
  m << (g * g + kZeta2) / (a * a), g / s,
       g / s, (a * a) / (s * s);
  return m;
}

Matrix2 fisher_info_inverse(const FrechetParams& theta) {
  validate(theta);
  const double a = theta.alpha;
  const double s = theta.sigma;
  const double g = 1.0 - kEulerGamma;
  Matrix2 m;
  m << a * a, -g * s,
       -g * s, s * s * (g * g + kZeta2) / (a * a);
  return kSixOverPi2 * m;
}

Matrix23 sensitivity_matrix(double alpha0) {
  require_alpha0(alpha0);
  const double a = alpha0;
  const double g = kEulerGamma;
  Matrix23 m;
  m << a * a, a * (1.0 - g), -a * a,
       g - 1.0, -(kGammaD2At2 + 1.0) / a, 1.0 - g;
  return kSixOverPi2 * m;
}

Matrix3 score_moment_covariance(double alpha0) {
  require_alpha0(alpha0);
  const double a = alpha0;
  const double g = kEulerGamma;
  Matrix3 m;
  m << 1.0 - 4.0 * g + g * g + 2.0 * kZeta2, a * (g - 2.0), kZeta2 - g,
       a * (g - 2.0), a * a, -a,
       kZeta2 - g, -a, kZeta2;
  return m / (a * a);
}

// With D(x) = (psi(1 + x) + gamma) / x:
//   b1(x) = Gamma(2 + x) D(x)
//   b2(x) = c(x) (Gamma(2 + x) - 1) / x + (gamma - 1) D(x),
//   c(x)  = Gamma''(2) + gamma + (gamma - 1) psi(1 + x).
// Both forms are free of the 1/x cancellation in the textbook expressions.
double b1(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("b1: argument must be >= 0");
  if (x == 0.0) return kZeta2;
  return special::gamma(2.0 + x) * special::digamma_increment_ratio(x);
}

double b2(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("b2: argument must be >= 0");
  if (x == 0.0) return 0.0;
  const double c = kGammaD2At2 + kEulerGamma + (kEulerGamma - 1.0) * special::digamma(1.0 + x);
  // (Gamma(2 + x) - 1) / x
  const double gamma_excess = 1.0 + (1.0 + x) * special::gamma_1p_minus_1(x) / x;
  return c * gamma_excess + (kEulerGamma - 1.0) * special::digamma_increment_ratio(x);
}

Vector2 bias_vector(double alpha0, double rho) {
  require_alpha0(alpha0);
  require_rho(rho);
  const double x = std::abs(rho) / alpha0;
  return -kSixOverPi2 * Vector2(b1(x), b2(x) / (alpha0 * alpha0));
}

Vector3 moment_bias_limit(double alpha0, double rho, double lambda) {
  require_alpha0(alpha0);
  require_rho(rho);
  const double a = alpha0;
  const double g = kEulerGamma;
  if (rho == 0.0) {
    return lambda / (a * a) *
           Vector3(g - (1.0 - g) * (1.0 - g) - kZeta2, a * (1.0 - g), g);
  }
  const double x = std::abs(rho) / a;
  const double gm1 = special::gamma_1p_minus_1(x);
  const double gamma2x_minus_1 = (1.0 + x) * gm1 + x;
  return lambda / (std::abs(rho) * a) *
         Vector3(1.0 - g - gamma2x_minus_1 - special::gamma_d1(2.0 + x),
                 a * gamma2x_minus_1,
                 -gm1);
}

double h_tau(double tau, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("h_tau: x must be positive");
  if (!std::isfinite(tau)) throw DomainError("h_tau: tau must be finite");
  const double log_x = std::log(x);
  if (tau == 0.0) return log_x;
  return std::expm1(tau * log_x) / tau;
}

Amse amse(double alpha0, double rho, double A_at_ar, std::size_t r, std::size_t n) {
  require_alpha0(alpha0);
  require_rho(rho);
  if (!std::isfinite(A_at_ar)) throw DomainError("amse: A(a_r) must be finite");
  if (r < 1 || r > n) throw DomainError("amse: requires 1 <= r <= n");
  const double b = b1(std::abs(rho) / alpha0);
  const double abias2 = A_at_ar * A_at_ar * kSixOverPi2 * kSixOverPi2 * b * b;
  const double avar = static_cast<double>(r) / static_cast<double>(n) * kSixOverPi2 * alpha0 * alpha0;
  return {abias2, avar, abias2 + avar};
}

SecondOrderSpec cauchy_second_order() {
  return {-1.0,
          [](double u) { return -1.0 / (1.0 + kPi * u); },
          [](double n) { return 2.0 * n / kPi; }};
}

double cauchy_theoretical_bias(double r) {
  if (!(r > 0.0)) throw DomainError("cauchy_theoretical_bias: r must be positive");
  return 12.0 / (kPi * kPi * (1.0 + 2.0 * r));
}

double cauchy_theoretical_variance(double k) {
  if (!(k > 0.0)) throw DomainError("cauchy_theoretical_variance: k must be positive");
  return kZeta2 / k;
}

BlockChoice optimal_block_size_cauchy(std::size_t n) {
  if (n < 8) throw DomainError("optimal_block_size_cauchy: n must be at least 8");
  const double target = 864.0 / std::pow(kPi, 6) * static_cast<double>(n);
  // r (1 + 2r)^2 is increasing on r > 0.
  double lo = 0.0;
  double hi = std::cbrt(target) + 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid * (1.0 + 2.0 * mid) * (1.0 + 2.0 * mid) - target;
    (f < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const auto r = static_cast<std::size_t>(std::max(1.0, std::round(root)));
  return {r, n / r, root};
}

}  // namespace fbm::asymptotics
