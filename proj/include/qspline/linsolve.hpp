#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "qspline/core.hpp"

namespace qspline {

template <typename Scalar>
using DenseMatrix = Matrix<Scalar>;

/// Infinity norm (max absolute row sum).
template <typename Derived>
typename Derived::Scalar infinity_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) {
    return typename Derived::Scalar(0);
  }
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Solves A x = b by LU with partial pivoting. Throws SingularMatrixError when
/// a pivot falls below 1e-13 ||A||_inf.
template <typename Scalar>
Vector<Scalar> solve_dense(const DenseMatrix<Scalar>& a, const Vector<Scalar>& b) {
  if (a.rows() != a.cols()) {
    throw DimensionError("solve_dense requires a square matrix");
  }
  if (b.size() != a.rows()) {
    throw DimensionError("right-hand side length does not match matrix");
  }
  const Scalar norm = infinity_norm(a);
  const Scalar threshold = Scalar(1e-13) * norm;
  if (!(norm > Scalar(0))) {
    throw SingularMatrixError("matrix is zero");
  }
  const Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(a);
  const Scalar smallest_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(smallest_pivot > threshold)) {
    throw SingularMatrixError("pivot below threshold; matrix is singular to working precision");
  }
  return lu.solve(b);
}

/// Determinant by pivoted elimination; a singular matrix yields 0 (or a value
/// at rounding level).
template <typename Scalar>
Scalar determinant(const DenseMatrix<Scalar>& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("determinant requires a square matrix");
  }
  if (a.rows() == 0) {
    return Scalar(1);
  }
  return Eigen::PartialPivLU<DenseMatrix<Scalar>>(a).determinant();
}

template <typename Scalar>
struct EigenResult {
  Scalar lambda = Scalar(0);
  /// Null vector of (I - lambda alpha), scaled to unit max-norm with its
  /// largest-magnitude entry positive.
  Vector<Scalar> eigenvector;
  /// ||(I - lambda alpha) v||_inf.
  Scalar residual = Scalar(0);
};

template <typename Scalar>
struct EigenSearchOptions {
  Index scan_points = 2000;
  /// Bisection stops once the bracket is narrower than this.
  Scalar tolerance = Scalar(1e-10);
  /// Local minima of |g| below this fraction of max |g| are treated as
  /// touching roots.
  Scalar touching_fraction = Scalar(1e-8);
  int inverse_iterations = 3;
  unsigned seed = 20240611u;
};

namespace detail {

template <typename Scalar>
Scalar characteristic(const DenseMatrix<Scalar>& alpha, Scalar lambda) {
  const Index n = alpha.rows();
  const DenseMatrix<Scalar> shifted = DenseMatrix<Scalar>::Identity(n, n) - lambda * alpha;
  return determinant(shifted);
}

template <typename Scalar>
Vector<Scalar> normalize_max(Vector<Scalar> v) {
  Index at = 0;
  const Scalar peak = v.cwiseAbs().maxCoeff(&at);
  if (peak > Scalar(0)) {
    v /= (v[at] < Scalar(0) ? -peak : peak);
  }
  return v;
}

template <typename Scalar>
EigenResult<Scalar> null_vector(const DenseMatrix<Scalar>& alpha, Scalar lambda, const EigenSearchOptions<Scalar>& opt) {
  const Index n = alpha.rows();
  const DenseMatrix<Scalar> shifted = DenseMatrix<Scalar>::Identity(n, n) - lambda * alpha;
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector<Scalar> v(n);
  for (Index i = 0; i < n; ++i) {
    v[i] = static_cast<Scalar>(unit(rng));
  }
  const Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(shifted);
  for (int it = 0; it < opt.inverse_iterations; ++it) {
    v = normalize_max<Scalar>(lu.solve(v));
  }
  if (!v.allFinite() || v.cwiseAbs().maxCoeff() == Scalar(0)) {
    // Exactly singular pivot: take the right singular vector instead.
    Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(shifted, Eigen::ComputeFullV);
    v = normalize_max<Scalar>(svd.matrixV().col(n - 1));
  }
  EigenResult<Scalar> result;
  result.lambda = lambda;
  result.eigenvector = v;
  result.residual = (shifted * v).cwiseAbs().maxCoeff();
  return result;
}

}  // namespace detail

/// Real characteristic values in [lo, hi]: the roots of g(lambda) =
/// det(I - lambda alpha). Sign changes on a uniform scan are refined by
/// bisection. Every other local minimum of |g| on the scan is refined by
/// golden-section search and kept when the refined |g| falls below a small
/// fraction of max |g| (touching or nearly double roots). Results are sorted
/// ascending.
template <typename Scalar>
std::vector<EigenResult<Scalar>> find_real_eigenvalues(const DenseMatrix<Scalar>& alpha, Scalar lo, Scalar hi,
                                                       const EigenSearchOptions<Scalar>& opt = {}) {
  if (alpha.rows() != alpha.cols()) {
    throw DimensionError("eigenvalue search requires a square matrix");
  }
  if (!(lo < hi)) {
    throw DomainError("eigenvalue bracket requires lo < hi");
  }
  if (opt.scan_points < 10) {
    throw DomainError("eigenvalue search requires at least 10 scan points");
  }
  using std::abs;
  const Index m = opt.scan_points;
  std::vector<Scalar> lambdas(m);
  std::vector<Scalar> g(m);
  const Scalar step = (hi - lo) / static_cast<Scalar>(m - 1);
  Scalar g_max(0);
  for (Index i = 0; i < m; ++i) {
    lambdas[i] = i + 1 == m ? hi : lo + static_cast<Scalar>(i) * step;
    g[i] = detail::characteristic(alpha, lambdas[i]);
    g_max = std::max(g_max, abs(g[i]));
  }

  std::vector<Scalar> roots;
  const auto sign_change = [&](Index i) { return (g[i] < Scalar(0)) != (g[i + 1] < Scalar(0)); };
  for (Index i = 0; i < m; ++i) {
    if (g[i] == Scalar(0)) {
      roots.push_back(lambdas[i]);
      continue;
    }
    if (i + 1 < m && g[i + 1] != Scalar(0) && sign_change(i)) {
      Scalar left = lambdas[i];
      Scalar right = lambdas[i + 1];
      const bool left_negative = g[i] < Scalar(0);
      while (right - left > opt.tolerance) {
        const Scalar mid = (left + right) / Scalar(2);
        const Scalar gm = detail::characteristic(alpha, mid);
        if (gm == Scalar(0)) {
          left = right = mid;
          break;
        }
        if ((gm < Scalar(0)) == left_negative) {
          left = mid;
        } else {
          right = mid;
        }
      }
      roots.push_back((left + right) / Scalar(2));
    }
  }

  const Scalar touching = opt.touching_fraction * g_max;
  for (Index i = 1; i + 1 < m; ++i) {
    const bool is_min = abs(g[i]) <= abs(g[i - 1]) && abs(g[i]) <= abs(g[i + 1]);
    if (!is_min || g[i] == Scalar(0) || g[i - 1] == Scalar(0) || g[i + 1] == Scalar(0) || sign_change(i - 1) ||
        sign_change(i)) {
      continue;
    }
    const Scalar ratio = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar left = lambdas[i - 1];
    Scalar right = lambdas[i + 1];
    while (right - left > opt.tolerance) {
      const Scalar c = right - ratio * (right - left);
      const Scalar d = left + ratio * (right - left);
      if (abs(detail::characteristic(alpha, c)) < abs(detail::characteristic(alpha, d))) {
        right = d;
      } else {
        left = c;
      }
    }
    const Scalar candidate = (left + right) / Scalar(2);
    if (abs(detail::characteristic(alpha, candidate)) < touching) {
      roots.push_back(candidate);
    }
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](Scalar x, Scalar y) { return abs(x - y) <= Scalar(2) * opt.tolerance; }),
              roots.end());

  std::vector<EigenResult<Scalar>> results;
  results.reserve(roots.size());
  for (const Scalar lambda : roots) {
    results.push_back(detail::null_vector(alpha, lambda, opt));
  }
  return results;
}

}  // namespace qspline
