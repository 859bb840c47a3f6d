#include "fbm/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fbm/asymptotics.hpp"
#include "fbm/errors.hpp"

namespace fbm {
namespace {

// Reciprocal mean log-excess over the minimum: a crude shape guess.
double initial_guess(const Sample& sample) {
  const double log_min = std::log(sample.min());
  double sum = 0.0;
  for (double x : sample.values()) sum += std::log(x) - log_min;
  const double mean = sum / static_cast<double>(sample.size());
  const double guess = mean > 0.0 ? 1.0 / mean : 1e4;
  return std::clamp(guess, 1e-4, 1e4);
}

}  // namespace

bool is_tied(const Sample& sample, double tie_tolerance) {
  return (sample.max() - sample.min()) <= tie_tolerance * sample.max();
}

RootResult solve_root(const Sample& sample, double lo, double hi, double tolerance,
                      int max_iterations) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw ArgumentError("solve_root: bracket must satisfy 0 < lo < hi < inf");
  }
  if (!(tolerance > 0.0)) throw ArgumentError("solve_root: tolerance must be positive");
  const double f_lo = psi_k(lo, sample);
  const double f_hi = psi_k(hi, sample);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw ArgumentError("solve_root: psi_k must be positive at lo and negative at hi");
  }

  // Start from the geometric midpoint; the root scale is unknown a priori.
  double alpha = std::sqrt(lo * hi);
  double best_alpha = alpha;
  double best_residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < max_iterations) {
    ++iter;
    const auto [f, slope] = psi_k_with_slope(alpha, sample);
    if (std::abs(f) < best_residual) {
      best_residual = std::abs(f);
      best_alpha = alpha;
    }
    if (std::abs(f) <= tolerance) break;
    if (f > 0.0) {
      lo = alpha;
    } else {
      hi = alpha;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * alpha) break;
    double next = alpha - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    alpha = next;
  }
  return {best_alpha, iter, best_residual};
}

FitResult fit(const Sample& sample, const SolverOptions& options) {
  if (sample.size() < 2) throw ArgumentError("fit: at least two observations are required");

  FitResult result;
  if (is_tied(sample, options.tie_tolerance)) {
    result.params = {std::numeric_limits<double>::infinity(), sample.min()};
    result.degenerate = true;
    return result;
  }

  const double guess = initial_guess(sample);
  double lo = 0.5 * guess;
  double hi = 2.0 * guess;
  int expansions = 0;
  while (psi_k(lo, sample) <= 0.0) {
    if (++expansions > options.max_bracket_expansions) {
      throw SolverError("fit: no sign change found below the initial guess", lo, hi);
    }
    hi = lo;
    lo /= 4.0;
  }
  while (psi_k(hi, sample) >= 0.0) {
    if (++expansions > options.max_bracket_expansions || !std::isfinite(hi * 4.0)) {
      throw SolverError("fit: no sign change found above the initial guess", lo, hi);
    }
    lo = hi;
    hi *= 4.0;
  }

  const auto root = solve_root(sample, lo, hi, options.tolerance, options.max_iterations);
  result.params = {root.alpha, profile_sigma(root.alpha, sample)};
  result.iterations = root.iterations;
  result.residual = root.residual;
  if (options.with_std_errors) {
    const auto cov = asymptotics::fisher_info_inverse(result.params);
    const auto k = static_cast<double>(sample.size());
    result.std_errors = StdErrors{std::sqrt(cov(0, 0) / k), std::sqrt(cov(1, 1) / k)};
  }
  return result;
}

}  // namespace fbm
