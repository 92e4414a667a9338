#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <string>

#include "qspline/errors.hpp"

namespace qspline {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Samples y_k = y(x_k), k = 0..n, of a function on a grid.
template <typename Scalar>
using SampleVector = Vector<Scalar>;

template <typename Scalar>
using ScalarFunction = std::function<Scalar(Scalar)>;

/// Equidistant partition of [a,b] into n subintervals of width h.
template <typename Scalar>
class Grid {
 public:
  Grid(Scalar a, Scalar b, Index n) : a_(a), b_(b), n_(n) {
    if (!(a < b)) {
      throw DomainError("grid requires a < b");
    }
    if (n < 2) {
      throw DomainError("grid requires n >= 2, got " + std::to_string(n));
    }
    h_ = (b - a) / static_cast<Scalar>(n);
    nodes_.resize(n + 1);
    for (Index k = 0; k < n; ++k) {
      nodes_[k] = a + static_cast<Scalar>(k) * h_;
    }
    nodes_[n] = b;
  }

  Scalar a() const { return a_; }
  Scalar b() const { return b_; }
  Index n() const { return n_; }
  Scalar h() const { return h_; }
  Index size() const { return n_ + 1; }
  const Vector<Scalar>& nodes() const { return nodes_; }
  Scalar node(Index k) const { return nodes_[k]; }

  bool contains(Scalar x) const { return x >= a_ && x <= b_; }

  friend bool operator==(const Grid& lhs, const Grid& rhs) {
    return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.n_ == rhs.n_;
  }

 private:
  Scalar a_;
  Scalar b_;
  Index n_;
  Scalar h_;
  Vector<Scalar> nodes_;
};

template <typename Scalar>
Grid<Scalar> make_grid(Scalar a, Scalar b, Index n) {
  return Grid<Scalar>(a, b, n);
}

/// Evaluates f at every node. Failures are rethrown as EvaluationError naming
/// the offending node.
template <typename Scalar, typename Function>
SampleVector<Scalar> sample(const Function& f, const Grid<Scalar>& grid) {
  SampleVector<Scalar> values(grid.size());
  for (Index k = 0; k < grid.size(); ++k) {
    const Scalar x = grid.node(k);
    Scalar value;
    try {
      value = static_cast<Scalar>(f(x));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "evaluation failed at node " << k << " (x=" << x << "): " << e.what();
      throw EvaluationError(msg.str());
    }
    using std::isfinite;
    if (!isfinite(value)) {
      std::ostringstream msg;
      msg << "non-finite value at node " << k << " (x=" << x << ")";
      throw EvaluationError(msg.str());
    }
    values[k] = value;
  }
  return values;
}

}  // namespace qspline
