#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qspline/errors.hpp"
#include "qspline/integral_eq.hpp"

namespace qspline::registry {

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// Interpolation target with its natural interval.
struct FunctionEntry {
  std::string id;
  std::string description;
  ScalarFunction<double> f;
  double a = -1.0;
  double b = 1.0;
  /// Bound on |f''| over [a,b]; empty when f'' is unbounded or undefined.
  std::optional<double> second_derivative_bound;
};

struct ProblemEntry {
  std::string id;
  std::string description;
  /// Template problem; n is set by instantiate().
  IntegralProblem<double> problem;
  /// Exact characteristic value, for fredholm_eigen entries.
  std::optional<double> exact_lambda;
  double bracket_lo = -10.0;
  double bracket_hi = 10.0;
};

const std::vector<FunctionEntry>& functions();
const std::vector<ProblemEntry>& problems();

/// Throws UnknownIdError listing the valid ids.
const FunctionEntry& find_function(std::string_view id);
const ProblemEntry& find_problem(std::string_view id);

IntegralProblem<double> instantiate(const ProblemEntry& entry, Index n);

/// max over 11 equispaced points of |residual| when the exact solution is
/// substituted into its own equation, integrals by a 20-point rule on 32
/// panels.
double reference_residual(const ProblemEntry& entry);

}  // namespace qspline::registry
