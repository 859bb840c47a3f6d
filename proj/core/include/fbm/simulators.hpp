#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fbm/frechet.hpp"
#include "fbm/rng.hpp"

namespace fbm {

/// |C| with C standard Cauchy: F(x) = (2/pi) arctan(x).
struct IidAbsCauchy {};
/// Standard Pareto: F(x) = 1 - 1/x on [1, inf).
struct IidPareto1 {};
struct IidFrechet {
  FrechetParams params;
};

using IidFamily = std::variant<IidAbsCauchy, IidPareto1, IidFrechet>;

/// xi_t = max(b_1 Z_t, b_2 Z_{t-1}, ..., b_p Z_{t-p+1}) with iid innovations Z.
struct MovingMax {
  std::vector<double> weights;
  IidFamily innovation;
};

/// |Z_t| where Z_t = eps_t sigma_t, sigma_t^2 = l0 + l1 Z_{t-1}^2 + l2 sigma_{t-1}^2.
struct Garch11 {
  double lambda0;
  double lambda1;
  double lambda2;
};

using SeriesModel = std::variant<IidAbsCauchy, IidPareto1, IidFrechet, MovingMax, Garch11>;

/// Throws ArgumentError when a model's parameters violate its constraints.
void validate(const SeriesModel& model);

/// Canonical model string in the CLI grammar, e.g. "iid-frechet:1,1".
std::string model_tag(const SeriesModel& model);

/// Parses the CLI model grammar:
///   iid-abs-cauchy | iid-pareto | iid-frechet:ALPHA,SIGMA
///   movmax:p=P,b=B1,...,BP,innov=NAME | garch:L0,L1,L2
SeriesModel parse_model(std::string_view text);

/// Human-readable summary of parse_model's grammar.
std::string_view model_grammar();

/// Inverse cdf of one iid family at u in (0, 1).
double iid_quantile(const IidFamily& family, double u);

/// Tail index alpha0 of an iid family (1 for |Cauchy| and Pareto(1)).
double iid_tail_index(const IidFamily& family);

/// Length-n realisation of the model. All draws come from `stream`.
///
/// Moving maxima draw p - 1 pre-sample innovations so the first value is
/// already stationary. GARCH runs kGarchBurnIn discarded steps first. The
/// result may contain zeros only for GARCH (probability zero).
std::vector<double> generate(const SeriesModel& model, std::size_t n, RngStream& stream);

inline constexpr std::size_t kGarchBurnIn = 2000;

/// Moving maximum recursion on given innovations Z_1..Z_m (oldest first);
/// returns the m - p + 1 values whose full window is available.
std::vector<double> moving_max_from_innovations(std::span<const double> weights,
                                                std::span<const double> innovations);

/// Extremal index b_max^a0 / sum_i b_i^a0 of a moving maximum process.
double moving_max_extremal_index(const MovingMax& model, double alpha0);

/// Reference tail index of the two studied GARCH(1,1) parameterisations
/// (both approximately 5). Throws LookupError for any other triple.
double garch_tail_index_reference(const Garch11& model);

/// Ground-truth tail index used by studies: family index for iid and moving
/// maxima, the reference table for GARCH.
double default_tail_index(const SeriesModel& model);

}  // namespace fbm
