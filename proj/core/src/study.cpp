#include "fbm/study.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fbm/blockmax.hpp"
#include "fbm/errors.hpp"
#include "fbm/hill.hpp"
#include "fbm/mle.hpp"

namespace fbm {
namespace {

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();
constexpr double kDegenerate = std::numeric_limits<double>::infinity();

// One (estimator, size) evaluation applied to a prefix of each replication's series.
struct Cell {
  Estimator estimator;
  std::size_t param;       // r for MLE, k for Hill
  std::size_t series_len;  // prefix of the replication series that is used
  std::size_t effective;
};

struct Plan {
  SeriesModel model;
  std::vector<Cell> cells;
  std::size_t replications;
  std::uint64_t seed;
  std::optional<double> truncation;
  unsigned jobs;
};

double estimate(const Cell& cell, std::span<const double> series,
                std::vector<std::pair<std::size_t, std::vector<double>>>& sorted_cache,
                const std::optional<double>& truncation) {
  try {
    const auto prefix = series.first(cell.series_len);
    if (cell.estimator == Estimator::BlockMaxMle) {
      const auto fitted = fit(extract(prefix, BlockSpec{cell.param, truncation}));
      return fitted.degenerate ? kDegenerate : fitted.params.alpha;
    }
    auto it = std::find_if(sorted_cache.begin(), sorted_cache.end(),
                           [&](const auto& e) { return e.first == cell.series_len; });
    if (it == sorted_cache.end()) {
      std::vector<double> sorted(prefix.begin(), prefix.end());
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      sorted_cache.emplace_back(cell.series_len, std::move(sorted));
      it = std::prev(sorted_cache.end());
    }
    return hill_sorted_descending(it->second, cell.param).alpha_hat;
  } catch (const DegenerateSampleError&) {
    return kDegenerate;
  } catch (const SolverError&) {
    return kFailed;
  } catch (const DomainError&) {
    return kFailed;
  }
}

// Returns estimates laid out as [replication][cell].
std::vector<double> simulate(const Plan& plan) {
  std::size_t max_len = 0;
  for (const auto& c : plan.cells) max_len = std::max(max_len, c.series_len);
  const std::size_t n_cells = plan.cells.size();
  std::vector<double> estimates(plan.replications * n_cells, kFailed);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::pair<std::size_t, std::vector<double>>> cache;
    for (std::size_t rep = next++; rep < plan.replications; rep = next++) {
      RngStream stream(plan.seed, rep);
      const auto series = generate(plan.model, max_len, stream);
      cache.clear();
      for (std::size_t c = 0; c < n_cells; ++c) {
        estimates[rep * n_cells + c] = estimate(plan.cells[c], series, cache, plan.truncation);
      }
    }
  };

  const unsigned jobs = std::max(1u, plan.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return estimates;
}

StudyRow aggregate(const Plan& plan, std::size_t cell_index, const std::vector<double>& estimates,
                   double alpha0) {
  const auto& cell = plan.cells[cell_index];
  StudyRow row;
  row.model = model_tag(plan.model);
  row.estimator = cell.estimator;
  row.r_or_k = cell.param;
  row.effective_size = cell.effective;
  row.seed = plan.seed;

  const std::size_t n_cells = plan.cells.size();
  std::vector<double> used;
  used.reserve(plan.replications);
  for (std::size_t rep = 0; rep < plan.replications; ++rep) {
    const double v = estimates[rep * n_cells + cell_index];
    if (std::isnan(v)) {
      ++row.failures;
    } else if (std::isinf(v)) {
      ++row.degenerate;
    } else {
      used.push_back(v);
    }
  }
  row.n_reps = used.size();
  row.valid = static_cast<double>(row.failures) <= 0.01 * static_cast<double>(plan.replications) &&
              used.size() >= 2;
  if (!row.valid) {
    row.bias = row.bias2 = row.variance = row.mse = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  double sum = 0.0;
  for (double v : used) sum += v;
  const double mean = sum / static_cast<double>(used.size());
  double ss = 0.0;
  for (double v : used) ss += (v - mean) * (v - mean);
  row.bias = mean - alpha0;
  row.bias2 = row.bias * row.bias;
  row.variance = ss / static_cast<double>(used.size() - 1);
  row.mse = row.bias2 + row.variance;
  return row;
}

[[noreturn]] void config_error(std::string_view field, std::string_view why) {
  throw ArgumentError(std::string(field) + ": " + std::string(why));
}

template <class T>
T parse_integer(std::string_view text, std::string_view field) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error(field, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error(field, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_csv_real(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_real(s, "csv");
}

}  // namespace

std::string_view to_string(Estimator e) {
  return e == Estimator::BlockMaxMle ? "mle" : "hill";
}

Estimator parse_estimator(std::string_view name) {
  name = trim(name);
  if (name == "mle") return Estimator::BlockMaxMle;
  if (name == "hill") return Estimator::Hill;
  config_error("estimators", "unknown estimator '" + std::string(name) + "' (expected mle or hill)");
}

std::optional<double> default_truncation(const SeriesModel& model) {
  if (std::holds_alternative<Garch11>(model)) return 1e-6;
  return std::nullopt;
}

void validate(const StudyConfig& config) {
  try {
    validate(config.model);
  } catch (const ArgumentError& e) {
    config_error("model", e.what());
  }
  if (config.n < 2) config_error("n", "must be at least 2");
  if (config.replications < 2) config_error("replications", "must be at least 2");
  if (config.estimators.empty()) config_error("estimators", "at least one estimator is required");
  const bool mle = std::ranges::count(config.estimators, Estimator::BlockMaxMle) > 0;
  const bool hill = std::ranges::count(config.estimators, Estimator::Hill) > 0;
  if (mle && config.block_sizes.empty()) config_error("block_sizes", "empty grid for mle");
  for (auto r : config.block_sizes) {
    if (r < 1 || r > config.n) config_error("block_sizes", "every r must satisfy 1 <= r <= n");
    if (config.n / r < 2) config_error("block_sizes", "r = " + std::to_string(r) + " leaves fewer than 2 blocks");
  }
  if (hill && config.hill_ks.empty() && config.block_sizes.empty()) {
    config_error("hill_k", "empty grid for hill");
  }
  for (auto k : config.hill_ks) {
    if (k < 1 || k + 1 > config.n) config_error("hill_k", "every k must satisfy 1 <= k <= n - 1");
  }
  if (config.alpha0 && (!(*config.alpha0 > 0.0) || !std::isfinite(*config.alpha0))) {
    config_error("alpha0", "must be positive");
  }
  if (config.truncation && (!(*config.truncation > 0.0) || !std::isfinite(*config.truncation))) {
    config_error("truncate", "must be positive");
  }
  if (!config.alpha0) {
    try {
      default_tail_index(config.model);
    } catch (const LookupError& e) {
      config_error("alpha0", std::string("not given and no reference value: ") + e.what());
    }
  }
}

StudyResult run_study(const StudyConfig& config) {
  validate(config);
  const double alpha0 = config.alpha0 ? *config.alpha0 : default_tail_index(config.model);

  Plan plan{config.model, {}, config.replications, config.master_seed,
            config.truncation ? config.truncation : default_truncation(config.model), config.jobs};
  for (auto est : config.estimators) {
    if (est == Estimator::BlockMaxMle) {
      for (auto r : config.block_sizes) {
        plan.cells.push_back({est, r, config.n, block_count(config.n, r)});
      }
    } else {
      std::vector<std::size_t> ks = config.hill_ks;
      if (ks.empty()) {
        for (auto r : config.block_sizes) ks.push_back(block_count(config.n, r));
      }
      for (auto k : ks) plan.cells.push_back({est, k, config.n, k});
    }
  }

  const auto estimates = simulate(plan);
  StudyResult result;
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    result.rows.push_back(aggregate(plan, c, estimates, alpha0));
  }
  return result;
}

std::string_view to_string(BvScenario s) {
  switch (s) {
    case BvScenario::FixedK:
      return "fixed-k";
    case BvScenario::FixedR:
      return "fixed-r";
    case BvScenario::Balanced:
      return "balanced";
  }
  return "";
}

BvScenario parse_scenario(std::string_view name) {
  name = trim(name);
  if (name == "fixed-k") return BvScenario::FixedK;
  if (name == "fixed-r") return BvScenario::FixedR;
  if (name == "balanced") return BvScenario::Balanced;
  config_error("scenario", "expected fixed-k, fixed-r or balanced, got '" + std::string(name) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> default_bv_grid(BvScenario scenario) {
  std::vector<std::pair<std::size_t, std::size_t>> grid;
  switch (scenario) {
    case BvScenario::FixedK:
      for (std::size_t r = 4; r <= 50; ++r) grid.emplace_back(r, 200);
      break;
    case BvScenario::FixedR:
      for (std::size_t k = 40; k <= 400; k += 20) grid.emplace_back(25, k);
      break;
    case BvScenario::Balanced:
      for (std::size_t r = 8; r <= 32; ++r) grid.emplace_back(r, r * r);
      break;
  }
  return grid;
}

StudyResult run_bias_variance_approx_study(const BvApproxConfig& config) {
  if (config.replications < 2) config_error("replications", "must be at least 2");
  const auto grid = config.grid.empty() ? default_bv_grid(config.scenario) : config.grid;
  Plan plan{IidAbsCauchy{}, {}, config.replications, config.master_seed, std::nullopt, config.jobs};
  for (const auto& [r, k] : grid) {
    if (r < 1) config_error("grid", "block size r must be at least 1");
    if (k < 2) config_error("grid", "number of blocks k must be at least 2");
    plan.cells.push_back({Estimator::BlockMaxMle, r, r * k, k});
  }
  const auto estimates = simulate(plan);
  StudyResult result;
  result.scaled_columns = true;
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    auto row = aggregate(plan, c, estimates, 1.0);
    row.scaled_bias = static_cast<double>(plan.cells[c].param) * row.bias;
    row.scaled_variance = static_cast<double>(plan.cells[c].effective) * row.variance;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string format_csv(const StudyResult& result) {
  std::string out = "model,estimator,r_or_k,effective_size,bias,bias2,variance,mse,n_reps,seed";
  if (result.scaled_columns) out += ",r_bias,k_variance";
  out += '\n';
  for (const auto& row : result.rows) {
    out += csv_field(row.model);
    out += ',';
    out += to_string(row.estimator);
    out += ',' + std::to_string(row.r_or_k) + ',' + std::to_string(row.effective_size);
    out += ',' + fmt_real(row.bias) + ',' + fmt_real(row.bias2) + ',' + fmt_real(row.variance) +
           ',' + fmt_real(row.mse);
    out += ',' + std::to_string(row.n_reps) + ',' + std::to_string(row.seed);
    if (result.scaled_columns) {
      out += ',' + fmt_real(row.scaled_bias.value_or(std::numeric_limits<double>::quiet_NaN()));
      out += ',' + fmt_real(row.scaled_variance.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    out += '\n';
  }
  return out;
}

StudyResult parse_csv(std::string_view text) {
  StudyResult result;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError("csv: missing header");
  const auto header = split_csv_line(line);
  if (header.size() != 10 && header.size() != 12) throw ArgumentError("csv: unexpected header");
  result.scaled_columns = header.size() == 12;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw ArgumentError("csv: wrong field count on line " + std::to_string(line_no));
    }
    StudyRow row;
    row.model = f[0];
    row.estimator = parse_estimator(f[1]);
    row.r_or_k = parse_integer<std::size_t>(f[2], "r_or_k");
    row.effective_size = parse_integer<std::size_t>(f[3], "effective_size");
    row.bias = parse_csv_real(f[4]);
    row.bias2 = parse_csv_real(f[5]);
    row.variance = parse_csv_real(f[6]);
    row.mse = parse_csv_real(f[7]);
    row.n_reps = parse_integer<std::size_t>(f[8], "n_reps");
    row.seed = parse_integer<std::uint64_t>(f[9], "seed");
    row.valid = !std::isnan(row.mse);
    if (result.scaled_columns) {
      row.scaled_bias = parse_csv_real(f[10]);
      row.scaled_variance = parse_csv_real(f[11]);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string format_json(const StudyResult& result) {
  using nlohmann::json;
  auto num = [](double v) -> json { return std::isnan(v) ? json(nullptr) : json(v); };
  json rows = json::array();
  for (const auto& row : result.rows) {
    json j{{"model", row.model},
           {"estimator", to_string(row.estimator)},
           {"r_or_k", row.r_or_k},
           {"effective_size", row.effective_size},
           {"bias", num(row.bias)},
           {"bias2", num(row.bias2)},
           {"variance", num(row.variance)},
           {"mse", num(row.mse)},
           {"n_reps", row.n_reps},
           {"seed", row.seed},
           {"degenerate", row.degenerate},
           {"failures", row.failures},
           {"valid", row.valid}};
    if (result.scaled_columns) {
      j["r_bias"] = num(row.scaled_bias.value_or(std::numeric_limits<double>::quiet_NaN()));
      j["k_variance"] = num(row.scaled_variance.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    rows.push_back(std::move(j));
  }
  return json{{"rows", std::move(rows)}}.dump(2) + "\n";
}

void write_results(const StudyResult& result, const std::filesystem::path& path,
                   ResultFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << (format == ResultFormat::Csv ? format_csv(result) : format_json(result));
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(start, end - start));
    if (item.empty()) throw ArgumentError("empty item in list '" + std::string(text) + "'");
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_integer<std::size_t>(item, "list"));
    } else {
      const auto first = parse_integer<std::size_t>(trim(item.substr(0, dots)), "list");
      auto rest = item.substr(dots + 2);
      std::size_t step = 1;
      if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
        step = parse_integer<std::size_t>(trim(rest.substr(colon + 1)), "list");
        rest = rest.substr(0, colon);
      }
      const auto last = parse_integer<std::size_t>(trim(rest), "list");
      if (step == 0 || last < first) throw ArgumentError("bad range '" + std::string(item) + "'");
      for (std::size_t v = first; v <= last; v += step) out.push_back(v);
    }
    start = end + 1;
  }
  return out;
}

void apply_study_setting(StudyConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  auto list = [&](std::string_view field) {
    try {
      return parse_index_list(value);
    } catch (const ArgumentError& e) {
      config_error(field, e.what());
    }
  };
  if (key == "model") {
    try {
      config.model = parse_model(value);
    } catch (const ArgumentError& e) {
      config_error("model", e.what());
    }
  } else if (key == "n") {
    config.n = parse_integer<std::size_t>(value, key);
  } else if (key == "estimators") {
    config.estimators.clear();
    std::size_t start = 0;
    while (start <= value.size()) {
      auto end = value.find(',', start);
      if (end == std::string_view::npos) end = value.size();
      config.estimators.push_back(parse_estimator(value.substr(start, end - start)));
      start = end + 1;
    }
  } else if (key == "block_sizes") {
    config.block_sizes = list(key);
  } else if (key == "hill_k") {
    config.hill_ks = list(key);
  } else if (key == "replications") {
    config.replications = parse_integer<std::size_t>(value, key);
  } else if (key == "seed") {
    config.master_seed = parse_integer<std::uint64_t>(value, key);
  } else if (key == "alpha0") {
    config.alpha0 = parse_real(value, key);
  } else if (key == "truncate") {
    config.truncation = parse_real(value, key);
  } else if (key == "jobs") {
    config.jobs = parse_integer<unsigned>(value, key);
  } else {
    config_error(key, "unknown config key");
  }
}

StudyConfig parse_study_config(std::istream& in) {
  StudyConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_study_setting(config, view.substr(0, eq), view.substr(eq + 1));
  }
  return config;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open '" + path.string() + "'");
  return parse_study_config(in);
}

}  // namespace fbm
