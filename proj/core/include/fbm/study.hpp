#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbm/simulators.hpp"

namespace fbm {

enum class Estimator { BlockMaxMle, Hill };

std::string_view to_string(Estimator e);
/// Accepts "mle" and "hill".
Estimator parse_estimator(std::string_view name);

struct StudyConfig {
  SeriesModel model = IidFrechet{{1.0, 1.0}};
  std::size_t n = 1000;
  std::vector<Estimator> estimators{Estimator::BlockMaxMle};
  /// Block sizes r for the block-maxima MLE.
  std::vector<std::size_t> block_sizes;
  /// Numbers of upper order statistics for Hill. Empty means: use the
  /// effective sizes floor(n / r) of the MLE grid.
  std::vector<std::size_t> hill_ks;
  std::size_t replications = 3000;
  std::uint64_t master_seed = 1;
  /// Ground truth; default_tail_index(model) when unset.
  std::optional<double> alpha0;
  /// Block-maximum floor; default_truncation(model) when unset.
  std::optional<double> truncation;
  /// Worker threads. Output does not depend on it.
  unsigned jobs = 1;
};

/// 1e-6 for GARCH (can emit values near zero), none otherwise.
std::optional<double> default_truncation(const SeriesModel& model);

struct StudyRow {
  std::string model;
  Estimator estimator = Estimator::BlockMaxMle;
  std::size_t r_or_k = 0;
  /// Number of blocks for MLE rows, k for Hill rows.
  std::size_t effective_size = 0;
  double bias = 0.0;
  double bias2 = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  /// Replications entering the aggregates (degenerate and failed ones excluded).
  std::size_t n_reps = 0;
  std::uint64_t seed = 0;
  std::size_t degenerate = 0;
  std::size_t failures = 0;
  /// False when more than 1% of replications failed; the statistics are then NaN.
  bool valid = true;
  /// r * bias and k * variance; only filled by the bias-variance study.
  std::optional<double> scaled_bias;
  std::optional<double> scaled_variance;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  /// Rows carry scaled_bias / scaled_variance columns.
  bool scaled_columns = false;
};

/// Throws ArgumentError naming the offending field.
void validate(const StudyConfig& config);

/// Monte Carlo bias / variance / MSE of the tail-index estimators.
///
/// Replication i draws one series from RngStream(master_seed, i); every grid
/// point and estimator is evaluated on that same series. Aggregation runs in
/// replication order, so results do not depend on `jobs`.
StudyResult run_study(const StudyConfig& config);

enum class BvScenario { FixedK, FixedR, Balanced };

std::string_view to_string(BvScenario s);
/// Accepts "fixed-k", "fixed-r" and "balanced".
BvScenario parse_scenario(std::string_view name);

/// Default (r, k) grids: k = 200 with r = 4..50; r = 25 with k = 40, 60, ..., 400;
/// r = 8..32 with k = r^2.
std::vector<std::pair<std::size_t, std::size_t>> default_bv_grid(BvScenario scenario);

struct BvApproxConfig {
  BvScenario scenario = BvScenario::FixedK;
  /// (r, k) pairs; default_bv_grid(scenario) when empty.
  std::vector<std::pair<std::size_t, std::size_t>> grid;
  std::size_t replications = 5000;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
};

/// Block-maxima MLE on iid |Cauchy| data at each (r, k), using the first r*k
/// values of one series per replication. Rows carry r * bias and k * variance.
StudyResult run_bias_variance_approx_study(const BvApproxConfig& config);

enum class ResultFormat { Csv, Json };

/// CSV: header model,estimator,r_or_k,effective_size,bias,bias2,variance,mse,n_reps,seed
/// (plus r_bias,k_variance when scaled_columns), 12 significant digits.
std::string format_csv(const StudyResult& result);
std::string format_json(const StudyResult& result);
/// Inverse of format_csv.
StudyResult parse_csv(std::string_view text);

/// Throws std::runtime_error carrying the path on I/O failure.
void write_results(const StudyResult& result, const std::filesystem::path& path,
                   ResultFormat format);

/// Flat "key = value" study description; '#' starts a comment. Keys: model, n,
/// estimators, block_sizes, hill_k, replications, seed, alpha0, truncate, jobs.
/// Integer lists accept ranges: "2..24" or "40..400:20".
StudyConfig parse_study_config(std::istream& in);
/// Applies one config key to an existing config; throws ArgumentError naming the key.
void apply_study_setting(StudyConfig& config, std::string_view key, std::string_view value);
StudyConfig load_study_config(const std::filesystem::path& path);

/// Parses "2..24", "40..400:20", "3,5,8" and combinations.
std::vector<std::size_t> parse_index_list(std::string_view text);

}  // namespace fbm
