#pragma once

#include <stdexcept>
#include <string>

namespace fbm {

/// Argument outside the mathematical domain of an operation (x <= 0, alpha <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Structurally invalid request: wrong sizes, out-of-range counts, malformed configs.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All top values tied; the statistic is not defined.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Root search failed. Carries the last bracket that was examined.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace fbm
