#include "fbm/simulators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cctype>
#include <numeric>
#include <optional>

#include "fbm/errors.hpp"
#include "fbm/special_functions.hpp"

namespace fbm {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string iid_tag(const IidFamily& family) {
  return std::visit(Overloaded{
                        [](const IidAbsCauchy&) { return std::string("iid-abs-cauchy"); },
                        [](const IidPareto1&) { return std::string("iid-pareto"); },
                        [](const IidFrechet& f) {
                          return "iid-frechet:" + fmt_number(f.params.alpha) + "," +
                                 fmt_number(f.params.sigma);
                        },
                    },
                    family);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_model(std::string_view text, std::string_view why) {
  throw ArgumentError("invalid model '" + std::string(text) + "': " + std::string(why) +
                      "\nvalid models:\n" + std::string(model_grammar()));
}

double parse_double(std::string_view token, std::string_view text) {
  token = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    bad_model(text, "cannot parse number '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_numbers(std::string_view list, std::string_view text) {
  std::vector<double> out;
  for (auto tok : split(list, ',')) out.push_back(parse_double(tok, text));
  return out;
}

IidFamily parse_iid(std::string_view text, std::string_view whole) {
  const auto name = trim(text.substr(0, text.find(':')));
  const bool has_args = text.find(':') != std::string_view::npos;
  if (name == "iid-abs-cauchy" && !has_args) return IidAbsCauchy{};
  if (name == "iid-pareto" && !has_args) return IidPareto1{};
  if (name == "iid-frechet") {
    if (!has_args) return IidFrechet{{1.0, 1.0}};
    const auto nums = parse_numbers(text.substr(text.find(':') + 1), whole);
    if (nums.size() != 2) bad_model(whole, "iid-frechet takes ALPHA,SIGMA");
    return IidFrechet{{nums[0], nums[1]}};
  }
  bad_model(whole, "unknown iid family '" + std::string(name) + "'");
}

MovingMax parse_movmax(std::string_view args, std::string_view whole) {
  // Tokens without '=' continue the previous key's comma-separated value.
  std::vector<std::pair<std::string, std::string>> kv;
  for (auto tok : split(args, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) {
      if (kv.empty()) bad_model(whole, "expected key=value");
      kv.back().second += ",";
      kv.back().second += std::string(trim(tok));
    } else {
      kv.emplace_back(std::string(trim(tok.substr(0, eq))), std::string(trim(tok.substr(eq + 1))));
    }
  }
  std::optional<double> p;
  std::optional<std::vector<double>> b;
  std::optional<IidFamily> innov;
  for (const auto& [key, value] : kv) {
    if (key == "p") {
      p = parse_double(value, whole);
    } else if (key == "b") {
      b = parse_numbers(value, whole);
    } else if (key == "innov") {
      innov = parse_iid(value, whole);
    } else {
      bad_model(whole, "unknown movmax key '" + key + "'");
    }
  }
  if (!b) bad_model(whole, "movmax requires b=B1,...,BP");
  if (!innov) bad_model(whole, "movmax requires innov=NAME");
  if (p && (*p != std::floor(*p) || static_cast<std::size_t>(*p) != b->size())) {
    bad_model(whole, "p does not match the number of weights");
  }
  return MovingMax{*b, *innov};
}

double draw_iid(const IidFamily& family, RngStream& stream) {
  return iid_quantile(family, stream.uniform_open());
}

}  // namespace

std::string_view model_grammar() {
  return "  iid-abs-cauchy\n"
         "  iid-pareto\n"
         "  iid-frechet:ALPHA,SIGMA\n"
         "  movmax:p=P,b=B1,...,BP,innov=NAME   (NAME is one of the iid models)\n"
         "  garch:L0,L1,L2\n";
}

void validate(const SeriesModel& model) {
  std::visit(Overloaded{
                 [](const IidAbsCauchy&) {},
                 [](const IidPareto1&) {},
                 [](const IidFrechet& f) {
                   try {
                     validate(f.params);
                   } catch (const DomainError& e) {
                     throw ArgumentError(e.what());
                   }
                 },
                 [](const MovingMax& m) {
                   if (m.weights.size() < 2) throw ArgumentError("movmax: p must be at least 2");
                   for (double b : m.weights) {
                     if (!(b >= 0.0) || !std::isfinite(b)) {
                       throw ArgumentError("movmax: weights must be nonnegative");
                     }
                   }
                   if (m.weights.front() == 0.0 || m.weights.back() == 0.0) {
                     throw ArgumentError("movmax: first and last weights must be nonzero");
                   }
                   const double total = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
                   if (std::abs(total - 1.0) > 1e-12) {
                     throw ArgumentError("movmax: weights must sum to 1");
                   }
                   if (const auto* f = std::get_if<IidFrechet>(&m.innovation)) {
                     validate(SeriesModel{*f});
                   }
                 },
                 [](const Garch11& g) {
                   if (!(g.lambda0 > 0.0) || !std::isfinite(g.lambda0)) {
                     throw ArgumentError("garch: lambda0 must be positive");
                   }
                   if (!(g.lambda1 >= 0.0) || !(g.lambda2 >= 0.0) || !std::isfinite(g.lambda1) ||
                       !std::isfinite(g.lambda2)) {
                     throw ArgumentError("garch: lambda1 and lambda2 must be nonnegative");
                   }
                 },
             },
             model);
}

std::string model_tag(const SeriesModel& model) {
  return std::visit(Overloaded{
                        [](const IidAbsCauchy& m) { return iid_tag(m); },
                        [](const IidPareto1& m) { return iid_tag(m); },
                        [](const IidFrechet& m) { return iid_tag(m); },
                        [](const MovingMax& m) {
                          std::string s = "movmax:p=" + std::to_string(m.weights.size()) + ",b=";
                          for (std::size_t i = 0; i < m.weights.size(); ++i) {
                            if (i) s += ",";
                            s += fmt_number(m.weights[i]);
                          }
                          return s + ",innov=" + iid_tag(m.innovation);
                        },
                        [](const Garch11& g) {
                          return "garch:" + fmt_number(g.lambda0) + "," + fmt_number(g.lambda1) +
                                 "," + fmt_number(g.lambda2);
                        },
                    },
                    model);
}

SeriesModel parse_model(std::string_view text) {
  const auto t = trim(text);
  const auto colon = t.find(':');
  const auto head = trim(t.substr(0, colon));
  const auto args = colon == std::string_view::npos ? std::string_view{} : t.substr(colon + 1);

  SeriesModel model;
  if (head == "movmax") {
    if (colon == std::string_view::npos) bad_model(text, "movmax requires arguments");
    model = parse_movmax(args, text);
  } else if (head == "garch") {
    const auto nums = parse_numbers(args, text);
    if (nums.size() != 3) bad_model(text, "garch takes L0,L1,L2");
    model = Garch11{nums[0], nums[1], nums[2]};
  } else {
    model = std::visit([](auto m) -> SeriesModel { return m; }, parse_iid(t, text));
  }
  try {
    validate(model);
  } catch (const ArgumentError& e) {
    bad_model(text, e.what());
  }
  return model;
}

double iid_quantile(const IidFamily& family, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("iid_quantile: u must lie in (0, 1)");
  return std::visit(Overloaded{
                        [u](const IidAbsCauchy&) { return std::tan(0.5 * special::kPi * u); },
                        [u](const IidPareto1&) { return 1.0 / (1.0 - u); },
                        [u](const IidFrechet& f) { return quantile(f.params, u); },
                    },
                    family);
}

double iid_tail_index(const IidFamily& family) {
  if (const auto* f = std::get_if<IidFrechet>(&family)) return f->params.alpha;
  return 1.0;
}

std::vector<double> generate(const SeriesModel& model, std::size_t n, RngStream& stream) {
  if (n == 0) throw ArgumentError("generate: n must be at least 1");
  validate(model);
  std::vector<double> out(n);
  std::visit(Overloaded{
                 [&](const IidAbsCauchy& m) {
                   for (double& v : out) v = draw_iid(m, stream);
                 },
                 [&](const IidPareto1& m) {
                   for (double& v : out) v = draw_iid(m, stream);
                 },
                 [&](const IidFrechet& m) {
                   for (double& v : out) v = draw_iid(m, stream);
                 },
                 [&](const MovingMax& m) {
                   std::vector<double> z(n + m.weights.size() - 1);
                   for (double& v : z) v = draw_iid(m.innovation, stream);
                   out = moving_max_from_innovations(m.weights, z);
                 },
                 [&](const Garch11& g) {
                   const double persistence = g.lambda1 + g.lambda2;
                   double sigma2 = persistence < 1.0 ? g.lambda0 / (1.0 - persistence) : g.lambda0;
                   double z2 = sigma2;
                   for (std::size_t t = 0; t < kGarchBurnIn + n; ++t) {
                     sigma2 = g.lambda0 + g.lambda1 * z2 + g.lambda2 * sigma2;
                     const double z = stream.normal() * std::sqrt(sigma2);
                     z2 = z * z;
                     if (t >= kGarchBurnIn) out[t - kGarchBurnIn] = std::abs(z);
                   }
                 },
             },
             model);
  return out;
}

std::vector<double> moving_max_from_innovations(std::span<const double> weights,
                                               std::span<const double> innovations) {
  const std::size_t p = weights.size();
  if (p == 0 || innovations.size() < p) {
    throw ArgumentError("moving_max_from_innovations: need at least p innovations");
  }
  std::vector<double> out(innovations.size() - p + 1);
  for (std::size_t t = 0; t < out.size(); ++t) {
    const std::size_t now = t + p - 1;
    double best = weights[0] * innovations[now];
    for (std::size_t i = 1; i < p; ++i) best = std::max(best, weights[i] * innovations[now - i]);
    out[t] = best;
  }
  return out;
}

double moving_max_extremal_index(const MovingMax& model, double alpha0) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw DomainError("moving_max_extremal_index: alpha0 must be positive");
  }
  try {
    validate(SeriesModel{model});
  } catch (const ArgumentError& e) {
    throw DomainError(e.what());
  }
  double total = 0.0;
  double largest = 0.0;
  for (double b : model.weights) {
    const double w = std::pow(b, alpha0);
    total += w;
    largest = std::max(largest, w);
  }
  return largest / total;
}

double garch_tail_index_reference(const Garch11& model) {
  struct Entry {
    double l0, l1, l2, alpha0;
  };
  static constexpr Entry kTable[] = {{0.5, 0.367, 0.367, 5.0}, {0.5, 0.08, 0.91, 5.0}};
  for (const auto& e : kTable) {
    if (std::abs(model.lambda0 - e.l0) <= 1e-12 && std::abs(model.lambda1 - e.l1) <= 1e-12 &&
        std::abs(model.lambda2 - e.l2) <= 1e-12) {
      return e.alpha0;
    }
  }
  throw LookupError("no reference tail index for " + model_tag(SeriesModel{model}));
}

double default_tail_index(const SeriesModel& model) {
  return std::visit(Overloaded{
                        [](const IidAbsCauchy&) { return 1.0; },
                        [](const IidPareto1&) { return 1.0; },
                        [](const IidFrechet& f) { return f.params.alpha; },
                        [](const MovingMax& m) { return iid_tail_index(m.innovation); },
                        [](const Garch11& g) { return garch_tail_index_reference(g); },
                    },
                    model);
}

}  // namespace fbm
