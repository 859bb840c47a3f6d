#include "fbm/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbm/errors.hpp"
#include "fbm/special_functions.hpp"

namespace fbm {
namespace {

void require_positive_x(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": observation must be positive and finite");
  }
}

void require_positive_alpha(double alpha, const char* fn) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(fn) + ": alpha must be positive and finite");
  }
}

// Sums over w_i = (x_i / x_min)^-alpha with d_i = log(x_i / x_min) >= 0.
struct WeightedLogSums {
  double sum_w = 0.0;
  double mean_d_weighted = 0.0;  // sum w d / sum w
  double var_d_weighted = 0.0;   // sum w (d - mean)^2 / sum w
  double mean_d = 0.0;           // (1/k) sum d
};

WeightedLogSums weighted_log_sums(double alpha, const Sample& sample, bool want_variance) {
  const double log_min = std::log(sample.min());
  const auto k = static_cast<double>(sample.size());
  WeightedLogSums s;
  double sum_wd = 0.0;
  double sum_d = 0.0;
  for (double x : sample.values()) {
    const double d = std::log(x) - log_min;
    const double w = std::exp(-alpha * d);
    s.sum_w += w;
    sum_wd += w * d;
    sum_d += d;
  }
  s.mean_d_weighted = sum_wd / s.sum_w;
  s.mean_d = sum_d / k;
  if (want_variance) {
    double acc = 0.0;
    for (double x : sample.values()) {
      const double d = std::log(x) - log_min;
      const double w = std::exp(-alpha * d);
      const double c = d - s.mean_d_weighted;
      acc += w * c * c;
    }
    s.var_d_weighted = acc / s.sum_w;
  }
  return s;
}

}  // namespace

void validate(const FrechetParams& theta) {
  if (!(theta.alpha > 0.0) || !std::isfinite(theta.alpha)) {
    throw DomainError("Frechet alpha must be positive and finite");
  }
  if (!(theta.sigma > 0.0) || !std::isfinite(theta.sigma)) {
    throw DomainError("Frechet sigma must be positive and finite");
  }
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("Sample: at least one value is required");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("Sample: value at index " + std::to_string(i) +
                        " is not strictly positive and finite");
    }
  }
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

Sample Sample::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("Sample::scaled: factor must be positive");
  std::vector<double> out(values_);
  for (double& v : out) v *= c;
  return Sample(std::move(out));
}

double cdf(const FrechetParams& theta, double x) {
  validate(theta);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::exp(-std::pow(x / theta.sigma, -theta.alpha));
}

double log_pdf(const FrechetParams& theta, double x) {
  validate(theta);
  require_positive_x(x, "log_pdf");
  const double log_z = std::log(x / theta.sigma);
  return std::log(theta.alpha / theta.sigma) - std::exp(-theta.alpha * log_z) -
         (theta.alpha + 1.0) * log_z;
}

double pdf(const FrechetParams& theta, double x) {
  return std::exp(log_pdf(theta, x));
}

double quantile(const FrechetParams& theta, double u) {
  validate(theta);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
  return theta.sigma * std::pow(-std::log(u), -1.0 / theta.alpha);
}

double log_likelihood(const FrechetParams& theta, const Sample& sample) {
  validate(theta);
  const double log_ratio = std::log(theta.alpha / theta.sigma);
  double total = 0.0;
  for (double x : sample.values()) {
    const double log_z = std::log(x / theta.sigma);
    total += log_ratio - std::exp(-theta.alpha * log_z) - (theta.alpha + 1.0) * log_z;
  }
  return total;
}

Score score(const FrechetParams& theta, double x) {
  validate(theta);
  require_positive_x(x, "score");
  const double log_z = std::log(x / theta.sigma);
  const double z_pow = std::exp(-theta.alpha * log_z);
  return {1.0 / theta.alpha + (z_pow - 1.0) * log_z,
          (1.0 - z_pow) * theta.alpha / theta.sigma};
}

double psi_k(double alpha, const Sample& sample) {
  require_positive_alpha(alpha, "psi_k");
  // The log x_min offsets of the two mean-log terms cancel.
  const auto s = weighted_log_sums(alpha, sample, false);
  return 1.0 / alpha + s.mean_d_weighted - s.mean_d;
}

double psi_k_slope(double alpha, const Sample& sample) {
  require_positive_alpha(alpha, "psi_k_slope");
  const auto s = weighted_log_sums(alpha, sample, true);
  return -1.0 / (alpha * alpha) - s.var_d_weighted;
}

PsiEvaluation psi_k_with_slope(double alpha, const Sample& sample) {
  require_positive_alpha(alpha, "psi_k");
  const auto s = weighted_log_sums(alpha, sample, true);
  return {1.0 / alpha + s.mean_d_weighted - s.mean_d,
          -1.0 / (alpha * alpha) - s.var_d_weighted};
}

double profile_sigma(double alpha, const Sample& sample) {
  require_positive_alpha(alpha, "profile_sigma");
  const double log_min = std::log(sample.min());
  double sum_w = 0.0;
  for (double x : sample.values()) sum_w += std::exp(-alpha * (std::log(x) - log_min));
  const double mean_w = sum_w / static_cast<double>(sample.size());
  // x_min * mean_w^(-1/alpha), with mean_w in (0, 1].
  return sample.min() * std::exp(-std::log(mean_w) / alpha);
}

double population_moment(double alpha0, double alpha, int log_power) {
  require_positive_alpha(alpha0, "population_moment");
  if (!(alpha > -alpha0) || !std::isfinite(alpha)) {
    throw DomainError("population_moment: requires alpha > -alpha0 (moment is infinite otherwise)");
  }
  const double arg = 1.0 + alpha / alpha0;
  switch (log_power) {
    case 0:
      return special::gamma(arg);
    case 1:
      return -special::gamma_d1(arg) / alpha0;
    case 2:
      return special::gamma_d2(arg) / (alpha0 * alpha0);
    default:
      throw ArgumentError("population_moment: log_power must be 0, 1 or 2");
  }
}

double population_psi(double alpha, double alpha0) {
  require_positive_alpha(alpha, "population_psi");
  require_positive_alpha(alpha0, "population_psi");
  return (special::digamma(1.0) - special::digamma(alpha / alpha0)) / alpha0;
}

Sample sample_frechet(const FrechetParams& theta, std::size_t n, RngStream& stream) {
  validate(theta);
  if (n == 0) throw ArgumentError("sample_frechet: n must be at least 1");
  std::vector<double> out(n);
  const double inv_alpha = -1.0 / theta.alpha;
  for (double& v : out) v = theta.sigma * std::pow(-std::log(stream.uniform_open()), inv_alpha);
  return Sample(std::move(out));
}

}  // namespace fbm
