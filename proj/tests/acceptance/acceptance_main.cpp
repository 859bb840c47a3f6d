// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "fbm/asymptotics.hpp"
#include "fbm/hill.hpp"
#include "fbm/mle.hpp"
#include "fbm/simulators.hpp"
#include "fbm/special_functions.hpp"
#include "fbm/study.hpp"
#include "oracles.hpp"

namespace {

using namespace fbm;
namespace as = fbm::asymptotics;

using special::kEulerGamma;
using special::kPi;
using special::kZeta2;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome sandwich_identity() {
  double worst = 0.0;
  for (double a : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto m = as::sensitivity_matrix(a);
    const as::Matrix2 diff = m * as::score_moment_covariance(a) * m.transpose() - as::fisher_info_inverse({a, 1.0});
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10, fmt("max |M S M' - I^-1| = %.3g (limit 1e-10)", worst)};
}

Outcome bias_vector_consistency() {
  double worst = 0.0;
  for (auto [a, rho] : {std::pair{1.0, -1.0}, std::pair{2.0, -0.5}, std::pair{1.0, 0.0}}) {
    const as::Vector2 d = as::sensitivity_matrix(a) * as::moment_bias_limit(a, rho, 1.0) - as::bias_vector(a, rho);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10, fmt("max |M beta - B| = %.3g (limit 1e-10)", worst)};
}

Outcome special_anchors() {
  const double g = kEulerGamma;
  const double errs[] = {
      std::abs(special::digamma(1.0) + g),
      std::abs(special::gamma_d1(2.0) - (1.0 - g)),
      std::abs(special::gamma_d2(2.0) - ((1.0 - g) * (1.0 - g) + kZeta2 - 1.0)),
      std::abs(special::gamma_d2(1.0) - (g * g + kZeta2)),
  };
  const double worst = *std::max_element(std::begin(errs), std::end(errs));
  return {worst <= 1e-12, fmt("max anchor error = %.3g (limit 1e-12)", worst)};
}

Outcome solver_correctness() {
  RngStream pick(404, 0);
  double worst_resid = 0.0, worst_equiv = 0.0;
  int slope_violations = 0, degenerate = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RngStream s(404, i + 1);
    const std::size_t k = 2 + static_cast<std::size_t>(pick.uniform_open() * 499);
    SeriesModel model;
    switch (i % 4) {
      case 0: model = IidFrechet{{std::exp(4.0 * pick.uniform_open() - 2.0), 1.0}}; break;
      case 1: model = IidAbsCauchy{}; break;
      case 2: model = IidPareto1{}; break;
      default: model = MovingMax{{0.1, 0.2, 0.3, 0.4}, IidAbsCauchy{}}; break;
    }
    const Sample x(generate(model, k, s));
    const auto f = fit(x);
    if (f.degenerate) {
      ++degenerate;
      continue;
    }
    const double a = f.params.alpha;
    worst_resid = std::max(worst_resid, std::abs(psi_k(a, x)));
    if (!(psi_k_slope(a, x) <= -1.0 / (a * a))) ++slope_violations;
    const double c = std::exp(14.0 * pick.uniform_open() - 7.0);
    const auto fc = fit(x.scaled(c));
    worst_equiv = std::max({worst_equiv, std::abs(fc.params.alpha / a - 1.0),
                            std::abs(fc.params.sigma / (c * f.params.sigma) - 1.0)});
  }
  const bool pass = degenerate == 0 && worst_resid <= 1e-10 && slope_violations == 0 && worst_equiv <= 1e-9;
  return {pass, fmt("max |Psi| = %.3g, slope violations = %d, max equivariance error = %.3g, degenerate = %d",
                    worst_resid, slope_violations, worst_equiv, degenerate)};
}

Outcome variance_reproduction() {
  StudyConfig c;
  c.model = IidFrechet{{1.0, 1.0}};
  c.n = 1000;
  c.block_sizes = {12};
  c.replications = 3000;
  c.jobs = worker_count();
  const auto row = run_study(c).rows.at(0);
  const double target = 6.0 / (kPi * kPi) / 83.0;
  const double se = std::sqrt(row.variance / static_cast<double>(row.n_reps));
  const bool var_ok = std::abs(row.variance / target - 1.0) <= 0.15;
  const bool bias_ok = std::abs(row.bias) <= 4.0 * se;
  return {var_ok && bias_ok,
          fmt("k = %zu, variance = %.4g vs %.4g (%+.1f%%, limit 15%%); bias = %.4g, 4 SE = %.4g%s",
              row.effective_size, row.variance, target, 100.0 * (row.variance / target - 1.0), row.bias,
              4.0 * se, bias_ok ? "" : " [bias exceeds 4 SE]")};
}

Outcome cauchy_bias_reproduction() {
  BvApproxConfig c;
  c.scenario = BvScenario::FixedK;
  c.grid = {{10, 200}, {25, 200}, {50, 200}};
  c.replications = 5000;
  c.jobs = worker_count();
  const auto result = run_bias_variance_approx_study(c);
  bool pass = true;
  std::string detail;
  for (const auto& row : result.rows) {
    const double r = static_cast<double>(row.r_or_k);
    const double theory = r * as::cauchy_theoretical_bias(r);
    const double se = r * std::sqrt(row.variance / static_cast<double>(row.n_reps));
    const double tol = std::max(0.2 * theory, 3.0 * se);
    const bool ok = std::abs(*row.scaled_bias - theory) <= tol;
    pass = pass && ok;
    detail += fmt("r=%zu: r*bias = %.4f vs %.4f (tol %.4f)%s; ", row.r_or_k, *row.scaled_bias, theory, tol,
                  ok ? "" : " [out]");
  }
  const auto& last = result.rows.back();
  const bool var_ok = std::abs(*last.scaled_variance / kZeta2 - 1.0) <= 0.2;
  pass = pass && var_ok;
  detail += fmt("k*variance at r=50 = %.4f vs %.4f%s", *last.scaled_variance, kZeta2, var_ok ? "" : " [out]");
  return {pass, detail};
}

Outcome optimal_block_size() {
  const auto choice = as::optimal_block_size_cauchy(1000);
  return {choice.r == 6, fmt("r = %zu, k = %zu, continuous root %.4f", choice.r, choice.k, choice.r_continuous)};
}

Outcome sigma_y_monte_carlo() {
  double worst = 0.0;
  for (double a0 : {1.0, 2.0}) {
    RngStream s(808, static_cast<std::uint64_t>(a0));
    const auto x = sample_frechet({a0, 1.0}, 1'000'000, s);
    std::vector<double> y[3];
    for (auto& v : y) v.reserve(x.size());
    for (double v : x.values()) {
      const double p = std::pow(v, -a0);
      const double l = std::log(v);
      y[0].push_back(p * l);
      y[1].push_back(p);
      y[2].push_back(l);
    }
    double mean[3];
    for (int i = 0; i < 3; ++i) mean[i] = oracle::mean_and_se(y[i]).mean;
    const auto expect = as::score_moment_covariance(a0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) acc += (y[i][t] - mean[i]) * (y[j][t] - mean[j]);
        worst = std::max(worst, std::abs(acc / static_cast<double>(x.size() - 1) - expect(i, j)));
      }
    }
  }
  return {worst <= 1e-2, fmt("max entrywise deviation = %.3g (limit 1e-2)", worst)};
}

Outcome hill_sanity() {
  constexpr std::size_t n = 100'000, k = 1000, reps = 1000;
  std::vector<double> est(reps);
  std::vector<double> x(n);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    RngStream s(909, rep);
    for (auto& v : x) v = iid_quantile(IidPareto1{}, s.uniform_open());
    est[rep] = hill(Sample(x), k).alpha_hat;
  }
  const double var = oracle::sample_variance(est);
  const double target = 1.0 / k;
  return {std::abs(var / target - 1.0) <= 0.2,
          fmt("variance = %.4g vs %.4g (%+.1f%%, limit 20%%)", var, target, 100.0 * (var / target - 1.0))};
}

Outcome figure_shape() {
  StudyConfig c;
  c.n = 1000;
  c.replications = 3000;
  c.jobs = worker_count();
  for (std::size_t r = 2; r <= 24; ++r) c.block_sizes.push_back(r);
  const auto argmin = [](const StudyResult& res) {
    const auto it = std::min_element(res.rows.begin(), res.rows.end(),
                                     [](const StudyRow& a, const StudyRow& b) { return a.mse < b.mse; });
    return it->r_or_k;
  };
  c.model = IidFrechet{{1.0, 1.0}};
  const auto frechet_r = argmin(run_study(c));
  c.model = IidAbsCauchy{};
  const auto cauchy_r = argmin(run_study(c));
  const bool pass = frechet_r == 2 && cauchy_r >= 3 && cauchy_r <= 8;
  return {pass, fmt("MSE-minimising r: iid-frechet %zu (want 2), iid-abs-cauchy %zu (want 3..8)", frechet_r,
                    cauchy_r)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sandwich identity", sandwich_identity},
      {"bias-vector consistency", bias_vector_consistency},
      {"special-function anchors", special_anchors},
      {"solver correctness", solver_correctness},
      {"variance reproduction", variance_reproduction},
      {"cauchy bias reproduction", cauchy_bias_reproduction},
      {"optimal block size", optimal_block_size},
      {"score-moment covariance monte carlo", sigma_y_monte_carlo},
      {"hill sanity", hill_sanity},
      {"figure shape", figure_shape},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %-38s %s  (%.1fs) %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
