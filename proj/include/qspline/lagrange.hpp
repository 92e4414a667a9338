#pragma once

#include "qspline/core.hpp"

namespace qspline {

/// Single global interpolating polynomial through all grid nodes, evaluated in
/// barycentric form. Used as the high-degree baseline the spline is compared
/// against; on equidistant nodes it exhibits Runge oscillation as n grows.
template <typename Scalar>
class LagrangeInterpolant {
 public:
  LagrangeInterpolant(Grid<Scalar> grid, SampleVector<Scalar> samples)
      : grid_(std::move(grid)), samples_(std::move(samples)), weights_(grid_.size()) {
    if (samples_.size() != grid_.size()) {
      throw DimensionError("sample vector length does not match grid");
    }
    const auto& x = grid_.nodes();
    for (Index j = 0; j < grid_.size(); ++j) {
      Scalar prod(1);
      for (Index i = 0; i < grid_.size(); ++i) {
        if (i != j) {
          prod *= x[j] - x[i];
        }
      }
      weights_[j] = Scalar(1) / prod;
    }
  }

  Scalar operator()(Scalar t) const {
    const auto& x = grid_.nodes();
    Scalar num(0);
    Scalar den(0);
    for (Index j = 0; j < grid_.size(); ++j) {
      const Scalar d = t - x[j];
      if (d == Scalar(0)) {
        return samples_[j];
      }
      const Scalar term = weights_[j] / d;
      num += term * samples_[j];
      den += term;
    }
    return num / den;
  }

  const Grid<Scalar>& grid() const { return grid_; }

 private:
  Grid<Scalar> grid_;
  SampleVector<Scalar> samples_;
  Vector<Scalar> weights_;
};

}  // namespace qspline
