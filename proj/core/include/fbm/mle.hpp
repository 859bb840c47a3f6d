#pragma once

#include <optional>

#include "fbm/frechet.hpp"

namespace fbm {

struct SolverOptions {
  /// Convergence threshold on |psi_k(alpha)|.
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Values count as tied when (max - min) / max <= tie_tolerance.
  double tie_tolerance = 1e-13;
  /// Geometric bracket expansions (factor 4) before giving up.
  int max_bracket_expansions = 60;
  /// Attach plug-in standard errors sqrt(diag(I^-1) / k).
  bool with_std_errors = false;
};

struct StdErrors {
  double alpha;
  double sigma;
};

struct FitResult {
  /// For a degenerate (all-tied) sample alpha is +infinity and sigma the common value.
  FrechetParams params;
  int iterations = 0;
  /// |psi_k(alpha_hat)|; zero for degenerate samples.
  double residual = 0.0;
  bool degenerate = false;
  std::optional<StdErrors> std_errors;
};

struct RootResult {
  double alpha;
  int iterations;
  double residual;
};

/// Frechet maximum likelihood estimate via the unique root of psi_k.
///
/// Requires k >= 2. All-tied samples yield a degenerate result rather than
/// an error. Throws SolverError if no sign change is found while expanding
/// the initial bracket.
FitResult fit(const Sample& sample, const SolverOptions& options = {});

/// Safeguarded Newton iteration on psi_k inside [lo, hi]; requires
/// psi_k(lo) > 0 > psi_k(hi). Newton steps that leave the current bracket are
/// replaced by bisection.
RootResult solve_root(const Sample& sample, double lo, double hi, double tolerance,
                      int max_iterations = 200);

/// Whether the sample counts as all tied under the given relative tolerance.
bool is_tied(const Sample& sample, double tie_tolerance);

}  // namespace fbm
