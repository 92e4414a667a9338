#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qspline/core.hpp"
#include "qspline/linsolve.hpp"
#include "qspline/quadrature.hpp"
#include "qspline/spline.hpp"

namespace qspline {

template <typename Scalar>
using Kernel = std::function<Scalar(Scalar, Scalar)>;

/// Equation forms, with y the unknown:
///   fredholm2       y(x) - lambda int_a^b K(x,s) y(s) ds = f(x)
///   fredholm_eigen  y(x) - lambda int_a^b K(x,s) y(s) ds = 0, lambda unknown
///   volterra2       y(x) = f(x) + lambda int_a^x K(x,s) y(s) ds
///   volterra1       f(x) = int_a^x K(x,s) y(s) ds
enum class EquationKind { fredholm2, fredholm_eigen, volterra2, volterra1 };

inline std::string to_string(EquationKind kind) {
  switch (kind) {
    case EquationKind::fredholm2:
      return "fredholm2";
    case EquationKind::fredholm_eigen:
      return "fredholm_eigen";
    case EquationKind::volterra2:
      return "volterra2";
    case EquationKind::volterra1:
      return "volterra1";
  }
  return "unknown";
}

template <typename Scalar>
struct IntegralProblem {
  EquationKind kind = EquationKind::fredholm2;
  Kernel<Scalar> kernel;
  /// f; empty for fredholm_eigen.
  ScalarFunction<Scalar> forcing;
  /// Ignored for fredholm_eigen and volterra1.
  Scalar lambda = Scalar(0);
  Scalar a = Scalar(0);
  Scalar b = Scalar(1);
  Index n = 2;
  /// Known solution, used only for error reporting.
  ScalarFunction<Scalar> reference;
};

/// How a computed eigenvector is scaled before it is compared with a
/// reference eigenfunction.
enum class EigenScaling {
  /// Match the reference at the first interior node x_1.
  first_interior_node,
  /// Least-squares multiple of the reference over [a,b].
  least_squares,
};

template <typename Scalar>
struct SolverOptions {
  int quad_order = kDefaultQuadratureOrder;
  /// Panels per subinterval when computing the L2 error metrics.
  Index metric_panels_per_piece = 4;
  Index max_error_samples = 2001;
  /// Panels over [x_{n-1}, x_n] for the first-kind Volterra functional G.
  Index g_panels = 4;
  EigenScaling scaling = EigenScaling::first_interior_node;
  EigenSearchOptions<Scalar> eigen;
};

template <typename Scalar>
struct ErrorMetrics {
  /// int (S - y)^2 dx.
  Scalar e_n = Scalar(0);
  /// sqrt(e_n).
  Scalar l2_norm = Scalar(0);
  /// max |S - y| on the dense sampling.
  Scalar max_error = Scalar(0);
  /// max |y_k - y(x_k)| at the nodes.
  Scalar nodal_max_error = Scalar(0);
};

template <typename Scalar>
struct EigenSolution;

template <typename Scalar>
struct SolveReport {
  SampleVector<Scalar> samples;
  std::optional<SplineModel<Scalar>> spline;
  std::optional<ErrorMetrics<Scalar>> errors;
  /// fredholm_eigen only, ascending in lambda. The top-level samples and
  /// spline repeat the first entry.
  std::vector<EigenSolution<Scalar>> eigen;
};

template <typename Scalar>
struct EigenSolution {
  Scalar lambda = Scalar(0);
  Scalar residual = Scalar(0);
  SolveReport<Scalar> report;
};

/// Weights w with int_{x_{k-1}}^{upper} K(x, s) P_k(s) ds = sum_i w_i y_i for
/// any data y. The linear part of P_k only touches y_{k-1} and y_k; the
/// quadratic part a_k (s - x_{k-1})(s - x_k) touches every y_i through row k
/// of C. Integrated with one panel of `rule`.
template <typename Scalar>
Vector<Scalar> kernel_partial_piece_weights(const Kernel<Scalar>& kernel, Scalar x, const Grid<Scalar>& grid, Index k,
                                            const CoeffMatrix<Scalar>& c, const QuadratureRule<Scalar>& rule,
                                            Scalar upper) {
  if (k < 1 || k > grid.n()) {
    throw DomainError("piece index out of range");
  }
  const Scalar left = grid.node(k - 1);
  const Scalar right = grid.node(k);
  const Scalar h = grid.h();
  Vector<Scalar> w = Vector<Scalar>::Zero(grid.size());
  if (upper == left) {
    return w;
  }
  Scalar hat_left(0);
  Scalar hat_right(0);
  Scalar bubble(0);
  const Scalar mid = (left + upper) / Scalar(2);
  const Scalar half = (upper - left) / Scalar(2);
  for (int q = 0; q < rule.order; ++q) {
    const Scalar s = mid + half * rule.nodes[q];
    const Scalar kw = rule.weights[q] * half * kernel(x, s);
    hat_left += kw * (right - s) / h;
    hat_right += kw * (s - left) / h;
    bubble += kw * (s - left) * (s - right);
  }
  w[k - 1] += hat_left;
  w[k] += hat_right;
  w += bubble * c.entries.row(k - 1).transpose();
  return w;
}

/// Weights for int_{x_{k-1}}^{x_k} K(x_j, s) P_k(s) ds.
template <typename Scalar>
Vector<Scalar> kernel_piece_weights(const Kernel<Scalar>& kernel, Scalar xj, const Grid<Scalar>& grid, Index k,
                                    const CoeffMatrix<Scalar>& c, const QuadratureRule<Scalar>& rule) {
  return kernel_partial_piece_weights(kernel, xj, grid, k, c, rule, grid.node(k));
}

/// Weights for int_a^x K(x, s) S(s) ds, x in [a, b].
template <typename Scalar>
Vector<Scalar> integral_weights_to(const Kernel<Scalar>& kernel, Scalar x, const Grid<Scalar>& grid,
                                   const CoeffMatrix<Scalar>& c, const QuadratureRule<Scalar>& rule) {
  if (!grid.contains(x)) {
    throw DomainError("upper limit outside the grid");
  }
  Vector<Scalar> w = Vector<Scalar>::Zero(grid.size());
  for (Index k = 1; k <= grid.n(); ++k) {
    if (grid.node(k) <= x) {
      w += kernel_piece_weights(kernel, x, grid, k, c, rule);
    } else {
      w += kernel_partial_piece_weights(kernel, x, grid, k, c, rule, x);
      break;
    }
  }
  return w;
}

template <typename Scalar>
struct LinearSystem {
  DenseMatrix<Scalar> matrix;
  Vector<Scalar> rhs;
};

namespace detail {

template <typename Scalar>
void validate(const IntegralProblem<Scalar>& p) {
  if (p.n < 2) {
    throw DomainError("integral problem requires n >= 2");
  }
  if (!(p.a < p.b)) {
    throw DomainError("integral problem requires a < b");
  }
  if (!p.kernel) {
    throw DomainError("integral problem has no kernel");
  }
  const bool needs_forcing = p.kind != EquationKind::fredholm_eigen;
  if (needs_forcing != static_cast<bool>(p.forcing)) {
    throw DomainError(needs_forcing ? "problem kind requires a forcing term"
                                    : "eigenvalue problem must not carry a forcing term");
  }
}

template <typename Scalar>
void require_kind(const IntegralProblem<Scalar>& p, EquationKind kind) {
  if (p.kind != kind) {
    throw DomainError("expected a " + to_string(kind) + " problem, got " + to_string(p.kind));
  }
}

/// Sum over all pieces: alpha_{j,i} with int_a^b K(x_j,s) S(s) ds = sum_i alpha_{j,i} y_i.
template <typename Scalar>
DenseMatrix<Scalar> fredholm_operator(const IntegralProblem<Scalar>& p, const Grid<Scalar>& grid,
                                      const CoeffMatrix<Scalar>& c, const QuadratureRule<Scalar>& rule) {
  const Index size = grid.size();
  DenseMatrix<Scalar> alpha = DenseMatrix<Scalar>::Zero(size, size);
  for (Index j = 0; j < size; ++j) {
    for (Index k = 1; k <= grid.n(); ++k) {
      alpha.row(j) += kernel_piece_weights(p.kernel, grid.node(j), grid, k, c, rule).transpose();
    }
  }
  return alpha;
}

/// Row j covers pieces 1..j, i.e. int_a^{x_j}. Row 0 is zero.
template <typename Scalar>
DenseMatrix<Scalar> volterra_operator(const IntegralProblem<Scalar>& p, const Grid<Scalar>& grid,
                                      const CoeffMatrix<Scalar>& c, const QuadratureRule<Scalar>& rule) {
  const Index size = grid.size();
  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Zero(size, size);
  for (Index j = 1; j < size; ++j) {
    for (Index k = 1; k <= j; ++k) {
      v.row(j) += kernel_piece_weights(p.kernel, grid.node(j), grid, k, c, rule).transpose();
    }
  }
  return v;
}

template <typename Scalar>
ErrorMetrics<Scalar> measure(const SplineModel<Scalar>& spline, const ScalarFunction<Scalar>& reference,
                             const QuadratureRule<Scalar>& rule, const SolverOptions<Scalar>& opt) {
  const auto& grid = spline.grid();
  ErrorMetrics<Scalar> m;
  m.e_n = l2_error(spline, reference, grid.a(), grid.b(), grid.n() * opt.metric_panels_per_piece, rule);
  using std::sqrt;
  m.l2_norm = sqrt(m.e_n);
  m.max_error = max_error(spline, reference, grid.a(), grid.b(), opt.max_error_samples);
  m.nodal_max_error = nodal_max_error(spline.samples(), grid, reference);
  return m;
}

template <typename Scalar>
SolveReport<Scalar> make_report(const Grid<Scalar>& grid, SampleVector<Scalar> samples, const CoeffMatrix<Scalar>& c,
                                const ScalarFunction<Scalar>& reference, const QuadratureRule<Scalar>& rule,
                                const SolverOptions<Scalar>& opt) {
  SolveReport<Scalar> report;
  report.spline = build_spline(grid, samples, c);
  report.samples = std::move(samples);
  if (reference) {
    report.errors = measure(*report.spline, reference, rule, opt);
  }
  return report;
}

}  // namespace detail

/// The collocation system (I - lambda alpha) y = f at the nodes. For
/// fredholm_eigen the matrix is alpha itself and the right-hand side is zero.
template <typename Scalar>
LinearSystem<Scalar> assemble_fredholm(const IntegralProblem<Scalar>& p, const SolverOptions<Scalar>& opt = {}) {
  detail::validate(p);
  if (p.kind != EquationKind::fredholm2 && p.kind != EquationKind::fredholm_eigen) {
    throw DomainError("assemble_fredholm requires a Fredholm problem");
  }
  const auto grid = make_grid(p.a, p.b, p.n);
  const auto c = coefficient_matrix(grid.n(), grid.h());
  const auto rule = gauss_legendre<Scalar>(opt.quad_order);
  const DenseMatrix<Scalar> alpha = detail::fredholm_operator(p, grid, c, rule);
  if (p.kind == EquationKind::fredholm_eigen) {
    return {alpha, Vector<Scalar>::Zero(grid.size())};
  }
  const Index size = grid.size();
  return {DenseMatrix<Scalar>::Identity(size, size) - p.lambda * alpha, sample<Scalar>(p.forcing, grid)};
}

template <typename Scalar>
SolveReport<Scalar> solve_fredholm(const IntegralProblem<Scalar>& p, const SolverOptions<Scalar>& opt = {}) {
  detail::require_kind(p, EquationKind::fredholm2);
  const auto system = assemble_fredholm(p, opt);
  const auto grid = make_grid(p.a, p.b, p.n);
  return detail::make_report(grid, solve_dense(system.matrix, system.rhs), coefficient_matrix(grid.n(), grid.h()),
                             p.reference, gauss_legendre<Scalar>(opt.quad_order), opt);
}

/// Characteristic values in [lo, hi] with their eigenfunctions. When a
/// reference is present each eigenvector is rescaled per opt.scaling before
/// the errors are measured.
template <typename Scalar>
SolveReport<Scalar> solve_fredholm_eigen(const IntegralProblem<Scalar>& p, Scalar lo, Scalar hi,
                                         const SolverOptions<Scalar>& opt = {}) {
  detail::require_kind(p, EquationKind::fredholm_eigen);
  const auto system = assemble_fredholm(p, opt);
  const auto grid = make_grid(p.a, p.b, p.n);
  const auto c = coefficient_matrix(grid.n(), grid.h());
  const auto rule = gauss_legendre<Scalar>(opt.quad_order);

  SolveReport<Scalar> report;
  for (const auto& pair : find_real_eigenvalues(system.matrix, lo, hi, opt.eigen)) {
    SampleVector<Scalar> v = pair.eigenvector;
    if (p.reference) {
      using std::abs;
      const Scalar ref_x1 = p.reference(grid.node(1));
      Scalar scale(1);
      if (opt.scaling == EigenScaling::first_interior_node && abs(v[1]) > Scalar(1e-12)) {
        scale = ref_x1 / v[1];
      } else {
        const auto unit = build_spline(grid, v, c);
        const Index panels = grid.n() * opt.metric_panels_per_piece;
        const Scalar cross = integrate_panels([&](Scalar x) { return unit(x) * p.reference(x); }, grid.a(), grid.b(),
                                              panels, rule);
        const Scalar self = integrate_panels([&](Scalar x) { return unit(x) * unit(x); }, grid.a(), grid.b(), panels,
                                             rule);
        scale = cross / self;
      }
      v *= scale;
    }
    report.eigen.push_back({pair.lambda, pair.residual, detail::make_report(grid, std::move(v), c, p.reference, rule, opt)});
  }
  if (!report.eigen.empty()) {
    const auto& first = report.eigen.front().report;
    report.samples = first.samples;
    report.spline = first.spline;
    report.errors = first.errors;
  }
  return report;
}

/// Collocates y_j = f_j + lambda sum_{k<=j} int_{I_k} K(x_j,s) P_k(s) ds with
/// y_0 = f_0. The a_k couple every node, so the system is dense.
template <typename Scalar>
SolveReport<Scalar> solve_volterra2(const IntegralProblem<Scalar>& p, const SolverOptions<Scalar>& opt = {}) {
  detail::validate(p);
  detail::require_kind(p, EquationKind::volterra2);
  const auto grid = make_grid(p.a, p.b, p.n);
  const auto c = coefficient_matrix(grid.n(), grid.h());
  const auto rule = gauss_legendre<Scalar>(opt.quad_order);
  const Index size = grid.size();
  const DenseMatrix<Scalar> matrix =
      DenseMatrix<Scalar>::Identity(size, size) - p.lambda * detail::volterra_operator(p, grid, c, rule);
  return detail::make_report(grid, solve_dense(matrix, sample<Scalar>(p.forcing, grid)), c, p.reference, rule, opt);
}

/// Collocates f_k = int_a^{x_k} K(x_k,s) S(s) ds for k = 1..n, which fixes
/// y_1..y_n as an affine function u + y_0 w of y_0. y_0 then minimizes
/// G = int_{x_{n-1}}^{x_n} F(x)^2 dx with F(x) = -f(x) + int_a^x K(x,s) S(s) ds;
/// F is affine in y_0, so the minimizer is -int F_u F_w / int F_w^2.
template <typename Scalar>
SolveReport<Scalar> solve_volterra1(const IntegralProblem<Scalar>& p, const SolverOptions<Scalar>& opt = {}) {
  detail::validate(p);
  detail::require_kind(p, EquationKind::volterra1);
  const auto grid = make_grid(p.a, p.b, p.n);
  const auto c = coefficient_matrix(grid.n(), grid.h());
  const auto rule = gauss_legendre<Scalar>(opt.quad_order);
  const Index n = grid.n();

  const DenseMatrix<Scalar> full = detail::volterra_operator(p, grid, c, rule).bottomRows(n);
  const DenseMatrix<Scalar> sub = full.rightCols(n);
  const SampleVector<Scalar> f = sample<Scalar>(p.forcing, grid);

  Vector<Scalar> u(n + 1);
  Vector<Scalar> w(n + 1);
  u[0] = Scalar(0);
  w[0] = Scalar(1);
  u.tail(n) = solve_dense<Scalar>(sub, f.tail(n));
  w.tail(n) = solve_dense<Scalar>(sub, -full.col(0));

  Scalar cross(0);
  Scalar self(0);
  const Scalar lo = grid.node(n - 1);
  const Scalar width = (grid.b() - lo) / static_cast<Scalar>(opt.g_panels);
  for (Index panel = 0; panel < opt.g_panels; ++panel) {
    const Scalar mid = lo + (static_cast<Scalar>(panel) + Scalar(0.5)) * width;
    for (int q = 0; q < rule.order; ++q) {
      const Scalar x = mid + width / Scalar(2) * rule.nodes[q];
      const Scalar weight = rule.weights[q] * width / Scalar(2);
      const Vector<Scalar> r = integral_weights_to(p.kernel, x, grid, c, rule);
      const Scalar fu = -p.forcing(x) + r.dot(u);
      const Scalar fw = r.dot(w);
      cross += weight * fu * fw;
      self += weight * fw * fw;
    }
  }
  if (self < Scalar(1e-14)) {
    throw DegenerateProblemError("G does not depend on y_0; the first-kind problem leaves y_0 undetermined");
  }
  const Scalar y0 = -cross / self;
  return detail::make_report(grid, SampleVector<Scalar>(u + y0 * w), c, p.reference, rule, opt);
}

/// Dispatches on the problem kind. Eigenvalue problems use [lo, hi].
template <typename Scalar>
SolveReport<Scalar> solve(const IntegralProblem<Scalar>& p, const SolverOptions<Scalar>& opt = {}, Scalar lo = -10,
                          Scalar hi = 10) {
  switch (p.kind) {
    case EquationKind::fredholm2:
      return solve_fredholm(p, opt);
    case EquationKind::fredholm_eigen:
      return solve_fredholm_eigen(p, lo, hi, opt);
    case EquationKind::volterra2:
      return solve_volterra2(p, opt);
    case EquationKind::volterra1:
      return solve_volterra1(p, opt);
  }
  throw DomainError("unknown equation kind");
}

}  // namespace qspline
