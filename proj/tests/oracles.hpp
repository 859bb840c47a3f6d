#pragma once

// Test-only reference computations. Nothing here calls into the library's
// estimation code paths; the routines are deliberately naive.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace fbm::oracle {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kEulerL = 0.577215664901532860606512090082402431L;

/// Bisection in long double on a function with f(lo) > 0 > f(hi).
inline long double bisect(const std::function<long double(long double)>& f, long double lo,
                          long double hi, int iterations = 200) {
  for (int i = 0; i < iterations; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

/// Central difference f'(x) with step h.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// zeta(2) by partial sums plus the Euler-Maclaurin tail.
inline long double zeta2_partial_sums(int terms = 100000) {
  long double s = 0.0L;
  for (int n = terms; n >= 1; --n) s += 1.0L / (static_cast<long double>(n) * n);
  const long double N = terms;
  return s + 1.0L / N - 1.0L / (2.0L * N * N) + 1.0L / (6.0L * N * N * N);
}

/// Direct Psi_k in long double: 1/a + sum x^-a log x / sum x^-a - mean log x.
inline long double psi_k_direct(long double a, std::span<const double> x) {
  long double s0 = 0, s1 = 0, sl = 0;
  for (double v : x) {
    const long double w = std::pow(static_cast<long double>(v), -a);
    s0 += w;
    s1 += w * std::log(static_cast<long double>(v));
    sl += std::log(static_cast<long double>(v));
  }
  return 1.0L / a + s1 / s0 - sl / static_cast<long double>(x.size());
}

/// Kolmogorov-Smirnov distance between the empirical cdf of `data` and `cdf`.
inline double ks_statistic(std::vector<double> data, const std::function<double(double)>& cdf) {
  std::sort(data.begin(), data.end());
  const auto n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

/// Asymptotic KS critical value at level 1e-3: sqrt(-log(alpha/2)/2) / sqrt(n).
inline double ks_critical_1e3(std::size_t n) {
  return std::sqrt(-0.5 * std::log(0.5e-3)) / std::sqrt(static_cast<double>(n));
}

struct MeanSe {
  double mean;
  double se;
};

inline MeanSe mean_and_se(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

inline double sample_variance(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

}  // namespace fbm::oracle
