#include "fbm/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "fbm/errors.hpp"

namespace fbm::special {
namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// Coefficients (-1)^k zeta(k) for k = 2..21 of the series
// (psi(1 + x) + gamma) / x = sum_{k>=2} (-1)^k zeta(k) x^(k-2).
const std::array<double, 20>& increment_series() {
  static const std::array<double, 20> coeffs = [] {
    std::array<double, 20> c{};
    for (int k = 2; k < 22; ++k) {
      const double z = boost::math::zeta(static_cast<double>(k));
      c[static_cast<std::size_t>(k - 2)] = (k % 2 == 0) ? z : -z;
    }
    return c;
  }();
  return coeffs;
}

}  // namespace

double gamma(double x) {
  require_positive(x, "gamma");
  return boost::math::tgamma(x);
}

double gamma_1p_minus_1(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("gamma_1p_minus_1: argument must be >= 0");
  return boost::math::tgamma1pm1(x);
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return boost::math::lgamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  return boost::math::digamma(x);
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  return boost::math::trigamma(x);
}

double gamma_d1(double x) {
  require_positive(x, "gamma_d1");
  return boost::math::tgamma(x) * boost::math::digamma(x);
}

double gamma_d2(double x) {
  require_positive(x, "gamma_d2");
  const double psi = boost::math::digamma(x);
  return boost::math::tgamma(x) * (psi * psi + boost::math::trigamma(x));
}

double digamma_increment_ratio(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("digamma_increment_ratio: argument must be nonnegative and finite");
  }
  if (x < 0.1) {
    // Horner on the zeta series; 20 terms leave a tail below 0.1^20.
    const auto& c = increment_series();
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  return (boost::math::digamma(1.0 + x) + kEulerGamma) / x;
}

}  // namespace fbm::special
