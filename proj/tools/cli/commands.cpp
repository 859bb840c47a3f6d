#include "cli/commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "fbm/asymptotics.hpp"
#include "fbm/blockmax.hpp"
#include "fbm/errors.hpp"
#include "fbm/frechet.hpp"
#include "fbm/mle.hpp"
#include "fbm/rng.hpp"
#include "fbm/simulators.hpp"
#include "fbm/study.hpp"

namespace fbm::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class Derived>
void print_matrix(std::ostream& out, const std::string& title, const Eigen::MatrixBase<Derived>& m) {
  out << title << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ' ' << num(m(i, j));
    out << '\n';
  }
}

struct FitArgs {
  std::string input;
  std::optional<std::size_t> block_size;
  std::optional<double> truncate;
  bool stderrs = false;
};

struct SimulateArgs {
  std::string model;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct StudyArgs {
  std::optional<std::string> config;
  std::optional<std::string> model, estimators, block_sizes, hill_k;
  std::optional<std::size_t> n, replications;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha0, truncate;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

struct BvArgs {
  std::string scenario = "fixed-k";
  std::optional<std::string> r_list, k_list;
  std::size_t replications = 5000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

struct AsymptoticsArgs {
  double alpha0 = 1.0;
  double sigma = 1.0;
  std::optional<double> rho;
  std::optional<std::size_t> n;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const auto series = read_series(a.input);
  if (a.block_size && *a.block_size > series.size()) {
    err << "fit: --block-size " << *a.block_size << " exceeds the " << series.size()
        << " values in " << a.input << '\n';
    return kUsageError;
  }
  const Sample sample = [&] {
    if (a.block_size) return extract(series, BlockSpec{*a.block_size, a.truncate});
    if (a.truncate) {
      std::vector<double> floored(series);
      for (double& v : floored) v = std::max(v, *a.truncate);
      return Sample(std::move(floored));
    }
    return Sample(series);
  }();
  if (sample.size() < 2) {
    err << "fit: need at least 2 observations after blocking, have " << sample.size() << '\n';
    return kUsageError;
  }
  SolverOptions options;
  options.with_std_errors = a.stderrs;
  const auto result = fit(sample, options);
  if (result.degenerate) {
    err << "fit: all " << sample.size()
        << " values are tied; by convention alpha_hat = inf and sigma_hat = " << num(result.params.sigma)
        << '\n';
    out << "alpha_hat = inf\n"
        << "sigma_hat = " << num(result.params.sigma) << '\n'
        << "k = " << sample.size() << '\n';
    return kDegenerate;
  }
  out << "alpha_hat = " << num(result.params.alpha) << '\n'
      << "sigma_hat = " << num(result.params.sigma) << '\n'
      << "k = " << sample.size() << '\n'
      << "residual = " << num(result.residual) << '\n'
      << "iterations = " << result.iterations << '\n';
  if (result.std_errors) {
    out << "stderr_alpha = " << num(result.std_errors->alpha) << '\n'
        << "stderr_sigma = " << num(result.std_errors->sigma) << '\n';
  }
  return kSuccess;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  SeriesModel model;
  try {
    model = parse_model(a.model);
  } catch (const ArgumentError& e) {
    err << "simulate: " << e.what();
    return kUsageError;
  }
  if (a.n == 0) {
    err << "simulate: --n must be at least 1\n";
    return kUsageError;
  }
  RngStream stream(a.seed, 0);
  const auto series = generate(model, a.n, stream);
  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "simulate: cannot open '" << a.out << "' for writing\n";
    return kUsageError;
  }
  for (double v : series) file << num(v) << '\n';
  if (!file.flush()) {
    err << "simulate: write to '" << a.out << "' failed\n";
    return kUsageError;
  }
  out << "wrote " << series.size() << " values to " << a.out << '\n';
  return kSuccess;
}

ResultFormat parse_format(const std::string& s) {
  if (s == "csv") return ResultFormat::Csv;
  if (s == "json") return ResultFormat::Json;
  throw ArgumentError("format: expected csv or json, got '" + s + "'");
}

int cmd_study(const StudyArgs& a, std::ostream& out) {
  StudyConfig config = a.config ? load_study_config(*a.config) : StudyConfig{};
  if (a.model) apply_study_setting(config, "model", *a.model);
  if (a.estimators) apply_study_setting(config, "estimators", *a.estimators);
  if (a.block_sizes) apply_study_setting(config, "block_sizes", *a.block_sizes);
  if (a.hill_k) apply_study_setting(config, "hill_k", *a.hill_k);
  if (a.n) config.n = *a.n;
  if (a.replications) config.replications = *a.replications;
  if (a.seed) config.master_seed = *a.seed;
  if (a.alpha0) config.alpha0 = *a.alpha0;
  if (a.truncate) config.truncation = *a.truncate;
  config.jobs = a.jobs;
  const auto format = parse_format(a.format);
  validate(config);

  const auto result = run_study(config);
  write_results(result, a.out, format);
  out << "wrote " << result.rows.size() << " rows to " << a.out << '\n';
  return kSuccess;
}

int cmd_bv_approx(const BvArgs& a, std::ostream& out) {
  BvApproxConfig config;
  config.scenario = parse_scenario(a.scenario);
  config.replications = a.replications;
  config.master_seed = a.seed;
  config.jobs = a.jobs;
  const auto format = parse_format(a.format);

  if (a.r_list || a.k_list) {
    const auto defaults = default_bv_grid(config.scenario);
    std::vector<std::size_t> rs, ks;
    for (const auto& [r, k] : defaults) {
      rs.push_back(r);
      ks.push_back(k);
    }
    if (a.r_list) rs = parse_index_list(*a.r_list);
    if (a.k_list) ks = parse_index_list(*a.k_list);
    switch (config.scenario) {
      case BvScenario::FixedK:
        if (a.k_list && ks.size() != 1) throw ArgumentError("k: fixed-k takes a single k");
        for (auto r : rs) config.grid.emplace_back(r, ks.front());
        break;
      case BvScenario::FixedR:
        if (a.r_list && rs.size() != 1) throw ArgumentError("r: fixed-r takes a single r");
        for (auto k : ks) config.grid.emplace_back(rs.front(), k);
        break;
      case BvScenario::Balanced:
        if (a.k_list) throw ArgumentError("k: balanced derives k = r^2");
        for (auto r : rs) config.grid.emplace_back(r, r * r);
        break;
    }
  }

  const auto result = run_bias_variance_approx_study(config);
  write_results(result, a.out, format);
  out << "wrote " << result.rows.size() << " rows to " << a.out << '\n';
  return kSuccess;
}

int cmd_asymptotics(const AsymptoticsArgs& a, std::ostream& out) {
  namespace as = asymptotics;
  const FrechetParams theta{a.alpha0, a.sigma};
  validate(theta);
  const auto info = as::fisher_info(theta);
  const auto inv = as::fisher_info_inverse(theta);
  const auto m = as::sensitivity_matrix(a.alpha0);
  const auto sigma_y = as::score_moment_covariance(a.alpha0);
  const auto sandwich = (m * sigma_y * m.transpose() - as::fisher_info_inverse({a.alpha0, 1.0}))
                            .cwiseAbs()
                            .maxCoeff();

  out << "alpha0 = " << num(a.alpha0) << ", sigma = " << num(a.sigma) << '\n';
  print_matrix(out, "fisher_info", info);
  print_matrix(out, "fisher_info_inverse", inv);
  out << "asymptotic_sd_alpha_per_sqrt_k = " << num(std::sqrt(inv(0, 0))) << '\n';
  print_matrix(out, "sensitivity_matrix M(alpha0)", m);
  print_matrix(out, "score_moment_covariance Sigma_Y(alpha0)", sigma_y);
  out << "sandwich_residual = " << num(sandwich) << '\n';
  if (a.rho) {
    const auto b = as::bias_vector(a.alpha0, *a.rho);
    out << "bias_vector B(alpha0, rho=" << num(*a.rho) << ") = " << num(b(0)) << ' ' << num(b(1))
        << '\n';
  }
  if (a.n) {
    const auto choice = as::optimal_block_size_cauchy(*a.n);
    const auto spec = as::cauchy_second_order();
    const double a_r = spec.a(static_cast<double>(choice.r));
    const auto err = as::amse(1.0, spec.rho, spec.A(a_r), choice.r, *a.n);
    out << "cauchy n = " << *a.n << '\n'
        << "  optimal_r = " << choice.r << '\n'
        << "  optimal_k = " << choice.k << '\n'
        << "  continuous_root_r = " << num(choice.r_continuous) << '\n'
        << "  bias = " << num(as::cauchy_theoretical_bias(static_cast<double>(choice.r))) << '\n'
        << "  abias2 = " << num(err.abias2) << '\n'
        << "  avar = " << num(err.avar) << '\n'
        << "  amse = " << num(err.amse) << '\n';
  }
  return kSuccess;
}

}  // namespace

std::vector<double> read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    if (view.front() == '+') view.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
    if (ec != std::errc() || ptr != view.data() + view.size() || !std::isfinite(v)) {
      throw ArgumentError(path + ":" + std::to_string(line_no) + ": cannot parse '" +
                          std::string(view) + "' as a number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ArgumentError(path + ": no values");
  return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block maxima Frechet estimation toolkit"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the Frechet distribution by maximum likelihood");
  fit_cmd->add_option("input", fit_args.input, "File of newline-separated values")->required();
  fit_cmd->add_option("--block-size", fit_args.block_size, "Extract block maxima of this size first")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--truncate", fit_args.truncate, "Floor c applied to every (block) value")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_flag("--stderr", fit_args.stderrs, "Print plug-in standard errors");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a simulated series, one value per line");
  sim_cmd->add_option("--model", sim_args.model, "Model specification")->required();
  sim_cmd->add_option("--n", sim_args.n, "Series length")->required();
  sim_cmd->add_option("--seed", sim_args.seed, "Master seed")->required();
  sim_cmd->add_option("--out", sim_args.out, "Output path")->required();
  sim_cmd->footer(std::string("Models:\n") + std::string(model_grammar()));

  StudyArgs study_args;
  auto* study_cmd = app.add_subcommand("study", "Monte Carlo bias/variance/MSE study");
  study_cmd->add_option("--config", study_args.config, "key = value config file");
  study_cmd->add_option("--model", study_args.model, "Model specification");
  study_cmd->add_option("--n", study_args.n, "Series length");
  study_cmd->add_option("--estimators", study_args.estimators, "mle,hill");
  study_cmd->add_option("--block-sizes", study_args.block_sizes, "MLE block sizes, e.g. 2..24");
  study_cmd->add_option("--hill-k", study_args.hill_k, "Hill k grid; default: MLE effective sizes");
  study_cmd->add_option("--replications", study_args.replications, "Monte Carlo replications");
  study_cmd->add_option("--seed", study_args.seed, "Master seed");
  study_cmd->add_option("--alpha0", study_args.alpha0, "True tail index");
  study_cmd->add_option("--truncate", study_args.truncate, "Block-maximum floor c");
  study_cmd->add_option("--out", study_args.out, "Output path")->required();
  study_cmd->add_option("--format", study_args.format, "csv or json");
  study_cmd->add_option("--jobs", study_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

  BvArgs bv_args;
  auto* bv_cmd = app.add_subcommand("bv-approx", "Absolute-Cauchy bias/variance approximation study");
  bv_cmd->add_option("--scenario", bv_args.scenario, "fixed-k, fixed-r or balanced");
  bv_cmd->add_option("--r", bv_args.r_list, "Block sizes (list or range)");
  bv_cmd->add_option("--k", bv_args.k_list, "Numbers of blocks (list or range)");
  bv_cmd->add_option("--replications", bv_args.replications, "Monte Carlo replications");
  bv_cmd->add_option("--seed", bv_args.seed, "Master seed");
  bv_cmd->add_option("--out", bv_args.out, "Output path")->required();
  bv_cmd->add_option("--format", bv_args.format, "csv or json");
  bv_cmd->add_option("--jobs", bv_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

  AsymptoticsArgs as_args;
  auto* as_cmd = app.add_subcommand("asymptotics", "Closed-form asymptotic quantities");
  as_cmd->add_option("--alpha0", as_args.alpha0, "Shape alpha0")->required();
  as_cmd->add_option("--sigma", as_args.sigma, "Scale sigma");
  as_cmd->add_option("--rho", as_args.rho, "Second-order index rho <= 0");
  as_cmd->add_option("--n", as_args.n, "Sample size for the absolute-Cauchy block size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_args, out, err);
    if (*sim_cmd) return cmd_simulate(sim_args, out, err);
    if (*study_cmd) return cmd_study(study_args, out);
    if (*bv_cmd) return cmd_bv_approx(bv_args, out);
    if (*as_cmd) return cmd_asymptotics(as_args, out);
  } catch (const std::exception& e) {
    err << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"fbm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fbm::cli
