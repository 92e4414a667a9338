#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qspline/core.hpp"

namespace qspline {

// Indexing convention used throughout this header: the quadratic coefficient
// a_k of piece I_k = [x_{k-1}, x_k], k = 1..n, is stored at position k-1, and
// the second difference Delta_k, k = 1..n-1, is stored at position k-1.

/// Discrete curvature Delta_k = (y_{k-1} - 2 y_k + y_{k+1}) / h^2.
template <typename Scalar>
Vector<Scalar> second_differences(const SampleVector<Scalar>& samples, const Grid<Scalar>& grid) {
  if (samples.size() != grid.size()) {
    throw DimensionError("sample vector length does not match grid");
  }
  const Index n = grid.n();
  const Scalar h2 = grid.h() * grid.h();
  Vector<Scalar> delta(n - 1);
  for (Index k = 1; k < n; ++k) {
    delta[k - 1] = (samples[k - 1] - Scalar(2) * samples[k] + samples[k + 1]) / h2;
  }
  return delta;
}

namespace detail {

template <typename Scalar>
void check_delta_size(const Vector<Scalar>& delta, Index n) {
  if (n < 2 || delta.size() != n - 1) {
    throw DimensionError("expected n-1 second differences");
  }
}

inline int alternating_sign(Index power) { return (power % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// The a_1 minimizing E(a_1) = (h^5/30) sum a_k^2 subject to the C^1
/// recursion a_{k+1} = Delta_k - a_k:
///   a_1 = -(1/n) sum_{j=1}^{n-1} (n-j) (-1)^j Delta_j.
template <typename Scalar>
Scalar optimal_a1(const Vector<Scalar>& delta, Index n) {
  detail::check_delta_size(delta, n);
  Scalar sum(0);
  for (Index j = 1; j < n; ++j) {
    sum += static_cast<Scalar>(n - j) * static_cast<Scalar>(detail::alternating_sign(j)) * delta[j - 1];
  }
  return -sum / static_cast<Scalar>(n);
}

/// Runs the C^1 recursion a_{k+1} = Delta_k - a_k from a given a_1.
template <typename Scalar>
Vector<Scalar> coefficients_recursive(Scalar a1, const Vector<Scalar>& delta) {
  const Index n = delta.size() + 1;
  Vector<Scalar> a(n);
  a[0] = a1;
  for (Index k = 1; k < n; ++k) {
    a[k] = delta[k - 1] - a[k - 1];
  }
  return a;
}

/// Closed-form coefficients
///   a_k = (-1)^{k+1} sum_{j=1}^{n-1} (j/n + s_j - 1) (-1)^j Delta_j,
/// with s_j = 1 for j <= k-1 and 0 otherwise. For k = 1 this reduces to the
/// optimal a_1.
template <typename Scalar>
Vector<Scalar> coefficients_explicit(const Vector<Scalar>& delta, Index n) {
  detail::check_delta_size(delta, n);
  const Scalar nn = static_cast<Scalar>(n);
  Vector<Scalar> a(n);
  for (Index k = 1; k <= n; ++k) {
    Scalar sum(0);
    for (Index j = 1; j < n; ++j) {
      const Scalar beta = static_cast<Scalar>(j) / nn + (j <= k - 1 ? Scalar(0) : Scalar(-1));
      sum += beta * static_cast<Scalar>(detail::alternating_sign(j)) * delta[j - 1];
    }
    a[k - 1] = static_cast<Scalar>(detail::alternating_sign(k + 1)) * sum;
  }
  return a;
}

/// Data-independent map from samples to quadratic coefficients, A = C * Y.
/// Depends only on n and h.
template <typename Scalar>
struct CoeffMatrix {
  Index n = 0;
  Scalar h = Scalar(0);
  /// n x (n+1); row k-1 holds c_{k,0..n}.
  Matrix<Scalar> entries;

  Vector<Scalar> apply(const SampleVector<Scalar>& samples) const {
    if (samples.size() != n + 1) {
      throw DimensionError("sample vector length does not match coefficient matrix");
    }
    return entries * samples;
  }
};

/// Builds C from
///   c_{k,j} = (-1)^{k+j} / h^2 * (beta_{j-1} + 2 beta_j + beta_{j+1}),
/// where beta_j = j/n for j <= k-1, j/n - 1 for k-1 < j <= n-1, and
/// beta_0 = beta_n = 0 (no Delta_0 or Delta_n exists).
template <typename Scalar>
CoeffMatrix<Scalar> coefficient_matrix(Index n, Scalar h) {
  if (n < 2) {
    throw DomainError("coefficient matrix requires n >= 2");
  }
  if (!(h > Scalar(0))) {
    throw DomainError("coefficient matrix requires h > 0");
  }
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar inv_h2 = Scalar(1) / (h * h);
  CoeffMatrix<Scalar> c{n, h, Matrix<Scalar>::Zero(n, n + 1)};
  Vector<Scalar> beta(n + 1);
  for (Index k = 1; k <= n; ++k) {
    beta[0] = Scalar(0);
    beta[n] = Scalar(0);
    for (Index j = 1; j < n; ++j) {
      beta[j] = static_cast<Scalar>(j) / nn - (j <= k - 1 ? Scalar(0) : Scalar(1));
    }
    for (Index j = 0; j <= n; ++j) {
      const Scalar left = j > 0 ? beta[j - 1] : Scalar(0);
      const Scalar right = j < n ? beta[j + 1] : Scalar(0);
      c.entries(k - 1, j) =
          static_cast<Scalar>(detail::alternating_sign(k + j)) * inv_h2 * (left + Scalar(2) * beta[j] + right);
    }
  }
  return c;
}

/// Piecewise quadratic S(x) = P_k(x) on I_k with
///   P_k(x) = p_k(x) + a_k (x - x_{k-1}) (x - x_k),
/// where p_k is the linear interpolant of (x_{k-1}, y_{k-1}), (x_k, y_k).
template <typename Scalar>
class SplineModel {
 public:
  SplineModel(Grid<Scalar> grid, SampleVector<Scalar> samples, Vector<Scalar> coefficients)
      : grid_(std::move(grid)), samples_(std::move(samples)), coefficients_(std::move(coefficients)) {
    if (samples_.size() != grid_.size() || coefficients_.size() != grid_.n()) {
      throw DimensionError("spline data does not match grid");
    }
  }

  const Grid<Scalar>& grid() const { return grid_; }
  const SampleVector<Scalar>& samples() const { return samples_; }
  /// a_k at position k-1.
  const Vector<Scalar>& coefficients() const { return coefficients_; }

  /// 1-based index of the piece containing x. Interior nodes belong to the
  /// piece on their left; x = a belongs to I_1.
  Index piece_index(Scalar x) const {
    check_domain(x);
    using std::ceil;
    const Scalar t = ceil((x - grid_.a()) / grid_.h());
    const Index k = static_cast<Index>(t);
    return std::clamp<Index>(k, 1, grid_.n());
  }

  /// P_k(x) for an explicit piece, without a domain check.
  Scalar piece_value(Index k, Scalar x) const {
    const Scalar left = grid_.node(k - 1);
    const Scalar right = grid_.node(k);
    const Scalar h = grid_.h();
    return (x - left) / h * samples_[k] - (x - right) / h * samples_[k - 1] +
           coefficients_[k - 1] * (x - left) * (x - right);
  }

  Scalar piece_derivative(Index k, Scalar x) const {
    const Scalar left = grid_.node(k - 1);
    const Scalar right = grid_.node(k);
    return (samples_[k] - samples_[k - 1]) / grid_.h() + coefficients_[k - 1] * (Scalar(2) * x - left - right);
  }

  Scalar value(Scalar x) const { return piece_value(piece_index(x), x); }
  Scalar derivative(Scalar x) const { return piece_derivative(piece_index(x), x); }
  Scalar operator()(Scalar x) const { return value(x); }

 private:
  void check_domain(Scalar x) const {
    if (!grid_.contains(x)) {
      std::ostringstream msg;
      msg << "x=" << x << " outside [" << grid_.a() << ", " << grid_.b() << "]";
      throw DomainError(msg.str());
    }
  }

  Grid<Scalar> grid_;
  SampleVector<Scalar> samples_;
  Vector<Scalar> coefficients_;
};

template <typename Scalar>
SplineModel<Scalar> build_spline(const Grid<Scalar>& grid, const SampleVector<Scalar>& samples,
                                 const CoeffMatrix<Scalar>& c) {
  if (c.n != grid.n()) {
    throw DimensionError("coefficient matrix built for a different grid");
  }
  return SplineModel<Scalar>(grid, samples, c.apply(samples));
}

template <typename Scalar>
SplineModel<Scalar> build_spline(const Grid<Scalar>& grid, const SampleVector<Scalar>& samples) {
  if (samples.size() != grid.size()) {
    throw DimensionError("sample vector length does not match grid");
  }
  return build_spline(grid, samples, coefficient_matrix(grid.n(), grid.h()));
}

template <typename Scalar>
Scalar evaluate(const SplineModel<Scalar>& spline, Scalar x) {
  return spline.value(x);
}

template <typename Scalar>
Scalar evaluate_derivative(const SplineModel<Scalar>& spline, Scalar x) {
  return spline.derivative(x);
}

/// E = sum_k int_{I_k} (P_k - p_k)^2 dx = (h^5/30) sum_k a_k^2.
template <typename Scalar>
Scalar fluctuation_energy(const Vector<Scalar>& coefficients, Scalar h) {
  using std::pow;
  return pow(h, 5) / Scalar(30) * coefficients.squaredNorm();
}

template <typename Scalar>
Scalar fluctuation_energy(const SplineModel<Scalar>& spline) {
  return fluctuation_energy(spline.coefficients(), spline.grid().h());
}

/// Max |f - S| over 1000 n equispaced points plus every node.
template <typename Scalar, typename Function>
Scalar dense_max_deviation(const SplineModel<Scalar>& spline, const Function& f) {
  using std::abs;
  const auto& grid = spline.grid();
  Scalar worst(0);
  for (Index k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, abs(static_cast<Scalar>(f(grid.node(k))) - spline.samples()[k]));
  }
  const Index samples = 1000 * grid.n();
  const Scalar step = (grid.b() - grid.a()) / static_cast<Scalar>(samples - 1);
  for (Index i = 0; i < samples; ++i) {
    const Scalar x = i + 1 == samples ? grid.b() : grid.a() + static_cast<Scalar>(i) * step;
    worst = std::max(worst, abs(static_cast<Scalar>(f(x)) - spline.value(x)));
  }
  return worst;
}

template <typename Scalar>
struct ConvergenceRecord {
  Index n = 0;
  Scalar h = Scalar(0);
  /// Measured max |f - S|.
  Scalar max_error = Scalar(0);
  /// M h (b - a - h/2).
  Scalar bound = Scalar(0);
  bool within_bound = false;
  /// log(D_i / D_{i+1}) / log(n_{i+1} / n_i) against the next record; NaN for
  /// the last record or when either error is zero.
  Scalar observed_order = std::numeric_limits<Scalar>::quiet_NaN();
};

template <typename Scalar>
struct ConvergenceReport {
  Scalar second_derivative_bound = Scalar(0);
  std::vector<ConvergenceRecord<Scalar>> records;

  bool all_within_bound() const {
    return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.within_bound; });
  }
};

/// Measures D = max|f - S| for each n and compares it with M h (b - a - h/2),
/// where M bounds |f''| on [a,b].
template <typename Scalar, typename Function>
ConvergenceReport<Scalar> convergence_study(const Function& f, Scalar second_derivative_bound, Scalar a, Scalar b,
                                            const std::vector<Index>& ns) {
  ConvergenceReport<Scalar> report;
  report.second_derivative_bound = second_derivative_bound;
  for (const Index n : ns) {
    const auto grid = make_grid(a, b, n);
    const auto spline = build_spline(grid, sample<Scalar>(f, grid));
    ConvergenceRecord<Scalar> record;
    record.n = n;
    record.h = grid.h();
    record.max_error = dense_max_deviation(spline, f);
    record.bound = second_derivative_bound * grid.h() * (b - a - grid.h() / Scalar(2));
    // Rounding slack so exactly reproduced data (M = 0) still counts as inside.
    const Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                         (Scalar(1) + spline.samples().cwiseAbs().maxCoeff());
    record.within_bound = record.max_error <= record.bound + slack;
    report.records.push_back(record);
  }
  using std::log;
  for (std::size_t i = 0; i + 1 < report.records.size(); ++i) {
    auto& cur = report.records[i];
    const auto& next = report.records[i + 1];
    if (cur.max_error > Scalar(0) && next.max_error > Scalar(0) && next.n != cur.n) {
      cur.observed_order = log(cur.max_error / next.max_error) /
                           log(static_cast<Scalar>(next.n) / static_cast<Scalar>(cur.n));
    }
  }
  return report;
}

}  // namespace qspline
