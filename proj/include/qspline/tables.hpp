#pragma once

#include <string>
#include <vector>

#include "qspline/core.hpp"

namespace qspline::tables {

/// Which number a cell compares.
enum class Metric {
  e_n_sq,     ///< int (approx - exact)^2
  e_n_l2,     ///< sqrt of e_n_sq
  E_T_nodes,  ///< max error at the nodes
  E_T_dense,  ///< max error on 2001 points
  lambda,     ///< lowest characteristic value in the bracket
};

enum class Method {
  spline,    ///< interpolate a registry function with the quadratic spline
  lagrange,  ///< interpolate with the global polynomial
  solver,    ///< solve a registry integral problem
  external,  ///< third-party routine; listed, not recomputed
};

enum class Check {
  factor2,   ///< ratio in [0.5, 2]
  decade,    ///< ratio in [0.1, 10]
  sig4,      ///< agrees to 4 significant figures
  at_most,   ///< computed <= published
};

struct ReferenceCell {
  std::string table;
  std::string id;
  Index n = 0;
  Method method = Method::spline;
  Metric metric = Metric::e_n_sq;
  double published = 0.0;
  Check check = Check::factor2;
};

const std::vector<ReferenceCell>& reference_cells();

/// Table ids in output order: "1".."8" and "wang".
std::vector<std::string> table_ids();

std::string to_string(Metric metric);
std::string to_string(Check check);

bool passes(Check check, double computed, double published);

}  // namespace qspline::tables
