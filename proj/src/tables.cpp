#include "qspline/tables.hpp"

#include <cmath>

namespace qspline::tables {

namespace {

std::vector<ReferenceCell> make_cells() {
  using M = Metric;
  using C = Check;
  using X = Method;
  std::vector<ReferenceCell> cells;
  const auto add = [&](std::string table, std::string id, Index n, X method, M metric, double value, C check) {
    cells.push_back({std::move(table), std::move(id), n, method, metric, value, check});
  };

  // Global polynomial interpolation of |x| on [-1,1].
  add("1", "abs", 10, X::lagrange, M::e_n_sq, 8.2e-2, C::factor2);
  add("1", "abs", 15, X::lagrange, M::e_n_sq, 2.8e-2, C::factor2);
  add("1", "abs", 20, X::lagrange, M::e_n_sq, 7.2e+2, C::factor2);

  add("2", "abs", 10, X::spline, M::e_n_sq, 2.6e-3, C::factor2);
  add("2", "abs", 20, X::spline, M::e_n_sq, 6.6e-4, C::factor2);
  add("2", "abs", 50, X::spline, M::e_n_sq, 1.0e-4, C::factor2);
  add("2", "abs", 100, X::spline, M::e_n_sq, 2.6e-5, C::factor2);

  add("3", "quadratic_end_condition", 10, X::external, M::e_n_sq, 2.0e-3, C::decade);
  add("3", "quadratic_end_condition", 50, X::external, M::e_n_sq, 9.8e-7, C::decade);
  add("3", "quadratic_end_condition", 100, X::external, M::e_n_sq, 1.9e-8, C::decade);
  add("3", "natural_cubic", 10, X::external, M::e_n_sq, 1.0e-3, C::decade);
  add("3", "natural_cubic", 50, X::external, M::e_n_sq, 8.2e-11, C::decade);
  add("3", "natural_cubic", 100, X::external, M::e_n_sq, 1.8e-13, C::decade);
  add("3", "sin2pix", 10, X::spline, M::e_n_sq, 4.0e-4, C::decade);
  add("3", "sin2pix", 50, X::spline, M::e_n_sq, 9.0e-9, C::decade);
  add("3", "sin2pix", 100, X::spline, M::e_n_sq, 1.0e-10, C::decade);

  // From table 4 on, the tabulated e_n is the L2 norm (root of the integral)
  // and E_T the largest nodal error.
  add("4", "krasnov1", 5, X::solver, M::e_n_l2, 6.4e-3, C::factor2);
  add("4", "krasnov1", 5, X::solver, M::E_T_nodes, 1.6e-3, C::factor2);
  add("4", "krasnov1", 10, X::solver, M::e_n_l2, 5.1e-4, C::factor2);
  add("4", "krasnov1", 10, X::solver, M::E_T_nodes, 1.9e-5, C::factor2);

  add("5", "krasnov2", 5, X::solver, M::lambda, -3.21785, C::sig4);
  add("5", "krasnov2", 5, X::solver, M::e_n_l2, 2.5e-2, C::factor2);
  add("5", "krasnov2", 5, X::solver, M::E_T_nodes, 6.0e-2, C::factor2);
  add("5", "krasnov2", 9, X::solver, M::lambda, -3.065060, C::sig4);
  add("5", "krasnov2", 9, X::solver, M::e_n_l2, 7.0e-3, C::factor2);
  add("5", "krasnov2", 9, X::solver, M::E_T_nodes, 1.6e-2, C::factor2);
  add("5", "krasnov2", 11, X::solver, M::lambda, -3.04336, C::sig4);
  add("5", "krasnov2", 11, X::solver, M::e_n_l2, 4.6e-3, C::factor2);
  add("5", "krasnov2", 11, X::solver, M::E_T_nodes, 8.6e-3, C::factor2);

  add("6", "krasnov3", 5, X::solver, M::e_n_l2, 9.3e-4, C::factor2);
  add("6", "krasnov3", 5, X::solver, M::E_T_nodes, 6.1e-5, C::factor2);
  add("6", "krasnov3", 10, X::solver, M::e_n_l2, 1.8e-4, C::factor2);
  add("6", "krasnov3", 10, X::solver, M::E_T_nodes, 5.1e-6, C::factor2);

  add("7", "malek1", 5, X::solver, M::e_n_l2, 4.8e-4, C::factor2);
  add("7", "malek1", 5, X::solver, M::E_T_nodes, 5.0e-5, C::factor2);
  add("7", "malek1", 10, X::solver, M::e_n_l2, 1.3e-4, C::factor2);
  add("7", "malek1", 10, X::solver, M::E_T_nodes, 5.1e-6, C::factor2);

  add("8", "krasnov4", 5, X::solver, M::e_n_l2, 1.4e-9, C::decade);
  add("8", "krasnov4", 5, X::solver, M::E_T_nodes, 6.3e-9, C::decade);
  add("8", "krasnov4", 10, X::solver, M::e_n_l2, 4.8e-8, C::decade);
  add("8", "krasnov4", 10, X::solver, M::E_T_nodes, 2.5e-7, C::decade);

  // 1.49e-3 is the least-squares {1, x, x^2} figure the spline must beat.
  add("wang", "wang", 5, X::solver, M::e_n_l2, 1.49e-3, C::at_most);
  add("wang", "wang", 5, X::solver, M::e_n_l2, 1.17e-3, C::factor2);
  add("wang", "wang", 10, X::solver, M::e_n_l2, 1.79e-5, C::factor2);
  return cells;
}

}  // namespace

const std::vector<ReferenceCell>& reference_cells() {
  static const auto cells = make_cells();
  return cells;
}

std::vector<std::string> table_ids() { return {"1", "2", "3", "4", "5", "6", "7", "8", "wang"}; }

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::e_n_sq:
      return "e_n_sq";
    case Metric::e_n_l2:
      return "e_n_l2";
    case Metric::E_T_nodes:
      return "E_T_nodes";
    case Metric::E_T_dense:
      return "E_T_dense";
    case Metric::lambda:
      return "lambda";
  }
  return "?";
}

std::string to_string(Check check) {
  switch (check) {
    case Check::factor2:
      return "factor 2";
    case Check::decade:
      return "factor 10";
    case Check::sig4:
      return "4 significant figures";
    case Check::at_most:
      return "at most";
  }
  return "?";
}

bool passes(Check check, double computed, double published) {
  if (!std::isfinite(computed)) {
    return false;
  }
  const double ratio = computed / published;
  switch (check) {
    case Check::factor2:
      return ratio >= 0.5 && ratio <= 2.0;
    case Check::decade:
      return ratio >= 0.1 && ratio <= 10.0;
    case Check::sig4: {
      const double unit = std::pow(10.0, std::floor(std::log10(std::abs(published))) - 3.0);
      return std::abs(computed - published) <= 0.5 * unit;
    }
    case Check::at_most:
      return computed <= published;
  }
  return false;
}

}  // namespace qspline::tables
