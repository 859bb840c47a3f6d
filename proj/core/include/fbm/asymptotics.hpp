#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Core>

#include "fbm/frechet.hpp"

namespace fbm::asymptotics {

using Matrix2 = Eigen::Matrix2d;
using Matrix23 = Eigen::Matrix<double, 2, 3>;
using Matrix3 = Eigen::Matrix3d;
using Vector2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;

/// Fisher information of the Frechet family at theta.
Matrix2 fisher_info(const FrechetParams& theta);
/// Closed-form inverse of fisher_info; the asymptotic covariance of sqrt(k)(theta_hat - theta).
Matrix2 fisher_info_inverse(const FrechetParams& theta);

/// Linear map from the centred empirical moments of
/// (x^-a0 log x, x^-a0, log x) to (alpha_hat - a0, sigma_hat / sigma - 1).
Matrix23 sensitivity_matrix(double alpha0);

/// Covariance of (X^-a0 log X, X^-a0, log X) for X ~ Frechet(a0, 1).
Matrix3 score_moment_covariance(double alpha0);

/// Bias shape functions on [0, inf). Both are continuous at 0, where
/// b1(0) = pi^2/6 and b2(0) = 0.
double b1(double x);
double b2(double x);

/// Asymptotic bias of sqrt(k)(alpha_hat - a0, sigma_hat/a_r - 1) per unit of
/// lambda = lim sqrt(k) A(a_r).
Vector2 bias_vector(double alpha0, double rho);

/// Limit of sqrt(k)(P_n - P) applied to (x^-a0 log x, x^-a0, log x) under a
/// second-order condition with index rho; sensitivity_matrix(a0) times this
/// equals lambda * bias_vector(a0, rho).
Vector3 moment_bias_limit(double alpha0, double rho, double lambda);

/// (x^tau - 1) / tau, or log x at tau = 0.
double h_tau(double tau, double x);

/// Second-order regular variation of -log F: index rho <= 0, auxiliary
/// function A(u) -> 0, and a norming sequence a(n).
struct SecondOrderSpec {
  double rho = 0.0;
  std::function<double(double)> A;
  std::function<double(double)> a;
};

struct Amse {
  double abias2;
  double avar;
  double amse;
};

/// Asymptotic squared bias, variance and MSE of alpha_hat for block size r
/// out of n observations; A_at_ar is A evaluated at a(r).
Amse amse(double alpha0, double rho, double A_at_ar, std::size_t r, std::size_t n);

/// Absolute Cauchy data: rho = -1, A(u) = -1/(1 + pi u), a(n) = 2n/pi.
SecondOrderSpec cauchy_second_order();

/// Asymptotic bias 12 / (pi^2 (1 + 2r)) of alpha_hat for absolute Cauchy data.
double cauchy_theoretical_bias(double r);
/// Asymptotic variance (pi^2/6) / k of alpha_hat for absolute Cauchy data.
double cauchy_theoretical_variance(double k);

struct BlockChoice {
  std::size_t r;
  std::size_t k;
  double r_continuous;  // real root of (864/pi^6) n = r (1 + 2r)^2
};

/// Bias-variance balancing block size for absolute Cauchy data: the real root
/// rounded to the nearest integer >= 1, then k = floor(n / r).
BlockChoice optimal_block_size_cauchy(std::size_t n);

}  // namespace fbm::asymptotics
