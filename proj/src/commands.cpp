#include "qspline/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include "qspline/integral_eq.hpp"
#include "qspline/lagrange.hpp"
#include "qspline/registry.hpp"
#include "qspline/spline.hpp"
#include "qspline/tables.hpp"

namespace qspline::commands {

namespace {

constexpr double kSelfCheckTolerance = 1e-8;

std::vector<std::string> metric_row(const std::string& table, const std::string& id, Index n,
                                    const std::string& metric, std::optional<double> computed,
                                    std::optional<double> published, const std::string& status) {
  std::optional<double> ratio;
  if (computed && published && *published != 0.0) {
    ratio = *computed / *published;
  }
  return {table,
          id,
          std::to_string(n),
          metric,
          format_optional(computed),
          format_optional(published),
          format_optional(ratio),
          status};
}

SolverOptions<double> solver_options(int quad_order) {
  SolverOptions<double> opt;
  opt.quad_order = quad_order;
  return opt;
}

struct InterpolationErrors {
  double e_n_sq = 0.0;
  double max_dense = 0.0;
};

template <typename Interpolant>
InterpolationErrors interpolation_errors(const Interpolant& s, const registry::FunctionEntry& fn, double a, double b,
                                         Index n, int quad_order) {
  const auto rule = gauss_legendre<double>(quad_order);
  InterpolationErrors out;
  out.e_n_sq = l2_error(s, fn.f, a, b, 4 * n, rule);
  out.max_dense = max_error(s, fn.f, a, b, 2001);
  return out;
}

void write_series(const std::string& path, const std::vector<std::pair<double, double>>& points) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  char buf[96];
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof buf, "%.12e %.12e\n", x, y);
    out << buf;
  }
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

/// Caches solver runs so each (problem, n) is solved once per reproduction.
class SolveCache {
 public:
  explicit SolveCache(int quad_order) : quad_order_(quad_order) {}

  const SolveReport<double>& get(const std::string& id, Index n) {
    const auto key = std::make_pair(id, n);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const auto& entry = registry::find_problem(id);
      auto report = qspline::solve(registry::instantiate(entry, n), solver_options(quad_order_), entry.bracket_lo,
                                   entry.bracket_hi);
      it = cache_.emplace(key, std::move(report)).first;
    }
    return it->second;
  }

 private:
  int quad_order_;
  std::map<std::pair<std::string, Index>, SolveReport<double>> cache_;
};

std::optional<double> solver_metric(const SolveReport<double>& report, tables::Metric metric) {
  using tables::Metric;
  if (metric == Metric::lambda) {
    if (report.eigen.empty()) {
      return std::nullopt;
    }
    return report.eigen.front().lambda;
  }
  if (!report.errors) {
    return std::nullopt;
  }
  switch (metric) {
    case Metric::e_n_sq:
      return report.errors->e_n;
    case Metric::e_n_l2:
      return report.errors->l2_norm;
    case Metric::E_T_nodes:
      return report.errors->nodal_max_error;
    case Metric::E_T_dense:
      return report.errors->max_error;
    case Metric::lambda:
      break;
  }
  return std::nullopt;
}

void self_check(const std::string& problem_id) {
  const auto& entry = registry::find_problem(problem_id);
  const double r = registry::reference_residual(entry);
  if (!(r <= kSelfCheckTolerance)) {
    throw Error("reference solution of '" + problem_id + "' does not satisfy its equation (residual " +
                format_number(r) + ")");
  }
}

}  // namespace

std::vector<std::string> metric_header() { return {"table", "id", "n", "metric", "computed", "published", "ratio", "status"}; }

CsvReport interpolate(const InterpolateArgs& args) {
  const auto& fn = registry::find_function(args.function);
  const double a = args.a.value_or(fn.a);
  const double b = args.b.value_or(fn.b);
  const auto grid = make_grid(a, b, args.n);
  const auto spline = build_spline(grid, sample<double>(fn.f, grid));
  const auto err = interpolation_errors(spline, fn, a, b, args.n, args.quad_order);

  CsvReport report{metric_header(), {}};
  report.add_row(metric_row("", fn.id, args.n, "e_n_sq", err.e_n_sq, std::nullopt, ""));
  report.add_row(metric_row("", fn.id, args.n, "e_n_l2", std::sqrt(err.e_n_sq), std::nullopt, ""));
  report.add_row(metric_row("", fn.id, args.n, "E_T_dense", err.max_dense, std::nullopt, ""));
  report.add_row(metric_row("", fn.id, args.n, "fluctuation_energy", fluctuation_energy(spline), std::nullopt, ""));

  if (args.plot_prefix) {
    const Index points = 50 * args.n + 1;
    std::vector<std::pair<double, double>> approx;
    std::vector<std::pair<double, double>> exact;
    for (Index i = 0; i < points; ++i) {
      const double x = i + 1 == points ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
      approx.emplace_back(x, spline(x));
      exact.emplace_back(x, fn.f(x));
    }
    write_series(*args.plot_prefix + "_spline.dat", approx);
    write_series(*args.plot_prefix + "_exact.dat", exact);
  }
  return report;
}

CsvReport lagrange(const LagrangeArgs& args) {
  const auto& fn = registry::find_function(args.function);
  const double a = args.a.value_or(fn.a);
  const double b = args.b.value_or(fn.b);
  const auto grid = make_grid(a, b, args.n);
  const LagrangeInterpolant<double> poly(grid, sample<double>(fn.f, grid));
  const auto err = interpolation_errors(poly, fn, a, b, args.n, args.quad_order);

  CsvReport report{metric_header(), {}};
  report.add_row(metric_row("", fn.id, args.n, "e_n_sq", err.e_n_sq, std::nullopt, ""));
  report.add_row(metric_row("", fn.id, args.n, "E_T_dense", err.max_dense, std::nullopt, ""));
  return report;
}

CsvReport solve(const SolveArgs& args) {
  const auto& entry = registry::find_problem(args.problem);
  const double lo = args.bracket_lo.value_or(entry.bracket_lo);
  const double hi = args.bracket_hi.value_or(entry.bracket_hi);
  const auto result =
      qspline::solve(registry::instantiate(entry, args.n), solver_options(args.quad_order), lo, hi);

  CsvReport report{metric_header(), {}};
  for (std::size_t i = 0; i < result.eigen.size(); ++i) {
    report.add_row(metric_row("", entry.id, args.n, "lambda[" + std::to_string(i) + "]", result.eigen[i].lambda,
                              std::nullopt, ""));
  }
  if (result.errors) {
    const auto& e = *result.errors;
    report.add_row(metric_row("", entry.id, args.n, "e_n_sq", e.e_n, std::nullopt, ""));
    report.add_row(metric_row("", entry.id, args.n, "e_n_l2", e.l2_norm, std::nullopt, ""));
    report.add_row(metric_row("", entry.id, args.n, "E_T_dense", e.max_error, std::nullopt, ""));
    report.add_row(metric_row("", entry.id, args.n, "E_T_nodes", e.nodal_max_error, std::nullopt, ""));
  }
  return report;
}

ReproduceResult reproduce(const std::string& table, int quad_order) {
  const auto ids = tables::table_ids();
  std::vector<std::string> selected;
  if (table == "all") {
    selected = ids;
  } else if (std::find(ids.begin(), ids.end(), table) != ids.end()) {
    selected = {table};
  } else {
    throw UsageError("unknown table '" + table + "' (expected 1..8, wang or all)");
  }

  for (const auto& cell : tables::reference_cells()) {
    if (cell.method == tables::Method::solver &&
        std::find(selected.begin(), selected.end(), cell.table) != selected.end()) {
      self_check(cell.id);
    }
  }

  ReproduceResult result{CsvReport{metric_header(), {}}, true};
  SolveCache cache(quad_order);
  for (const auto& t : selected) {
    for (const auto& cell : tables::reference_cells()) {
      if (cell.table != t) {
        continue;
      }
      std::optional<double> computed;
      switch (cell.method) {
        case tables::Method::external:
          result.report.add_row(metric_row(cell.table, cell.id, cell.n, tables::to_string(cell.metric), std::nullopt,
                                           cell.published, "external, not reproduced"));
          continue;
        case tables::Method::spline: {
          const auto& fn = registry::find_function(cell.id);
          const auto grid = make_grid(fn.a, fn.b, cell.n);
          const auto spline = build_spline(grid, sample<double>(fn.f, grid));
          computed = interpolation_errors(spline, fn, fn.a, fn.b, cell.n, quad_order).e_n_sq;
          break;
        }
        case tables::Method::lagrange: {
          const auto& fn = registry::find_function(cell.id);
          const auto grid = make_grid(fn.a, fn.b, cell.n);
          const LagrangeInterpolant<double> poly(grid, sample<double>(fn.f, grid));
          computed = interpolation_errors(poly, fn, fn.a, fn.b, cell.n, quad_order).e_n_sq;
          break;
        }
        case tables::Method::solver:
          computed = solver_metric(cache.get(cell.id, cell.n), cell.metric);
          break;
      }
      const bool ok = computed && tables::passes(cell.check, *computed, cell.published);
      result.all_passed = result.all_passed && ok;
      const std::string status = (ok ? "ok (" : "FAIL (") + tables::to_string(cell.check) + ")";
      result.report.add_row(
          metric_row(cell.table, cell.id, cell.n, tables::to_string(cell.metric), computed, cell.published, status));
    }
  }
  return result;
}

ConvergeResult converge(const ConvergeArgs& args) {
  const auto& fn = registry::find_function(args.function);
  if (args.ns.empty()) {
    throw UsageError("converge needs at least one n");
  }
  if (!std::is_sorted(args.ns.begin(), args.ns.end())) {
    throw UsageError("n list must be ascending");
  }
  const auto bound = args.second_derivative_bound ? args.second_derivative_bound : fn.second_derivative_bound;
  if (!bound) {
    throw UsageError("function '" + fn.id + "' has no registered bound on |f''|; pass --M");
  }
  const auto study = convergence_study(fn.f, *bound, fn.a, fn.b, args.ns);

  ConvergeResult result{CsvReport{{"id", "n", "h", "D", "bound", "within_bound", "observed_order"}, {}}, true};
  for (const auto& r : study.records) {
    result.report.add_row({fn.id, std::to_string(r.n), format_number(r.h), format_number(r.max_error),
                           format_number(r.bound), r.within_bound ? "true" : "false",
                           std::isnan(r.observed_order) ? "" : format_number(r.observed_order)});
  }
  result.all_within_bound = study.all_within_bound();
  return result;
}

}  // namespace qspline::commands
