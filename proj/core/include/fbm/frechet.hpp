#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fbm/rng.hpp"

namespace fbm {

/// Shape and scale of the two-parameter Frechet law G(x) = exp(-(x/sigma)^-alpha).
struct FrechetParams {
  double alpha = 1.0;
  double sigma = 1.0;
};

/// Throws DomainError unless alpha and sigma are positive and finite.
void validate(const FrechetParams& theta);

/// Non-empty collection of strictly positive, finite observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

  /// Every value multiplied by c > 0.
  Sample scaled(double c) const;

 private:
  std::vector<double> values_;
  double min_;
  double max_;
};

double cdf(const FrechetParams& theta, double x);
double pdf(const FrechetParams& theta, double x);
/// log p_theta(x), evaluated without forming the density.
double log_pdf(const FrechetParams& theta, double x);
/// sigma * (-log u)^(-1/alpha) for u in (0, 1).
double quantile(const FrechetParams& theta, double u);

/// L(theta | x) = sum_i log p_theta(x_i).
double log_likelihood(const FrechetParams& theta, const Sample& sample);

struct Score {
  double d_alpha;
  double d_sigma;
};

/// Gradient of log p_theta(x) with respect to (alpha, sigma).
Score score(const FrechetParams& theta, double x);

/// Profile score in alpha, scaled by 1/k:
///   1/alpha + sum x^-a log x / sum x^-a - mean(log x).
/// Its unique zero is the shape MLE. The x^-alpha weights are taken relative
/// to the sample minimum, so large alpha cannot overflow.
double psi_k(double alpha, const Sample& sample);

/// d psi_k / d alpha = -1/alpha^2 - (variance of log x under x^-alpha weights).
double psi_k_slope(double alpha, const Sample& sample);

/// Profile scale ((1/k) sum x^-alpha)^(-1/alpha): the likelihood-maximising sigma
/// for a fixed alpha.
double profile_sigma(double alpha, const Sample& sample);

/// Psi_k and its slope in one pass over the sample.
struct PsiEvaluation {
  double value;
  double slope;
};
PsiEvaluation psi_k_with_slope(double alpha, const Sample& sample);

/// E[X^-alpha (log X)^p] for X ~ Frechet(alpha0, 1), p in {0, 1, 2}.
/// Finite only for alpha > -alpha0.
double population_moment(double alpha0, double alpha, int log_power);

/// Limit of psi_k under Frechet(alpha0, 1) sampling:
/// (digamma(1) - digamma(alpha / alpha0)) / alpha0.
double population_psi(double alpha, double alpha0);

/// n iid draws by inversion.
Sample sample_frechet(const FrechetParams& theta, std::size_t n, RngStream& stream);

}  // namespace fbm
