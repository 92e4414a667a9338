#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qspline/core.hpp"
#include "qspline/errors.hpp"
#include "qspline/report.hpp"

namespace qspline::commands {

class IoError : public Error {
 public:
  using Error::Error;
};

/// Column layout shared by interpolate, lagrange, solve and reproduce.
std::vector<std::string> metric_header();

struct InterpolateArgs {
  std::string function;
  std::optional<double> a;
  std::optional<double> b;
  Index n = 10;
  int quad_order = 8;
  /// Writes <prefix>_spline.dat and <prefix>_exact.dat, two columns (x value).
  std::optional<std::string> plot_prefix;
};

/// e_n(S), its root and the dense max error of the spline interpolant.
CsvReport interpolate(const InterpolateArgs& args);

struct LagrangeArgs {
  std::string function;
  std::optional<double> a;
  std::optional<double> b;
  Index n = 10;
  int quad_order = 8;
};

/// e_n of the global interpolating polynomial on the same nodes.
CsvReport lagrange(const LagrangeArgs& args);

struct SolveArgs {
  std::string problem;
  Index n = 10;
  int quad_order = 8;
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;
};

/// Every error metric for the solution, plus one lambda row per characteristic
/// value for eigenproblems.
CsvReport solve(const SolveArgs& args);

struct ReproduceResult {
  CsvReport report;
  bool all_passed = true;
};

/// Recomputes every cell of the given reference table ("1".."8", "wang" or
/// "all") and compares it with the stored value. Throws UsageError for an
/// unknown table and Error when a registry reference fails its self-check.
ReproduceResult reproduce(const std::string& table, int quad_order = 8);

struct ConvergeArgs {
  std::string function;
  std::vector<Index> ns;
  /// Bound on |f''|; falls back to the registry value.
  std::optional<double> second_derivative_bound;
};

struct ConvergeResult {
  CsvReport report;
  bool all_within_bound = true;
};

ConvergeResult converge(const ConvergeArgs& args);

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qspline::commands
