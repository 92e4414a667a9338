#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qspline/core.hpp"

namespace qspline {

/// Gauss-Legendre rule on the reference interval [-1, 1].
template <typename Scalar>
struct QuadratureRule {
  int order = 0;
  Vector<Scalar> nodes;
  Vector<Scalar> weights;
};

inline constexpr int kMaxQuadratureOrder = 32;
inline constexpr int kDefaultQuadratureOrder = 8;

/// Nodes are the roots of P_order, found by Newton iteration from the
/// Chebyshev-like initial guess cos(pi (i - 1/4) / (order + 1/2)); weights are
/// 2 / ((1 - x^2) P'_order(x)^2).
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw UnsupportedOrderError("Gauss-Legendre order must be in [1, " + std::to_string(kMaxQuadratureOrder) +
                                "], got " + std::to_string(order));
  }
  using std::abs;
  using std::cos;
  QuadratureRule<Scalar> rule{order, Vector<Scalar>(order), Vector<Scalar>(order)};
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (order + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    Scalar x = cos(pi * (Scalar(i) - Scalar(0.25)) / (Scalar(order) + Scalar(0.5)));
    Scalar dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_order(x) and P_{order-1}(x).
      Scalar p0(1);
      Scalar p1 = x;
      for (int m = 2; m <= order; ++m) {
        const Scalar p2 = (Scalar(2 * m - 1) * x * p1 - Scalar(m - 1) * p0) / Scalar(m);
        p0 = p1;
        p1 = p2;
      }
      const Scalar p_n = order == 1 ? x : p1;
      const Scalar p_nm1 = order == 1 ? Scalar(1) : p0;
      dp = Scalar(order) * (x * p_n - p_nm1) / (x * x - Scalar(1));
      const Scalar dx = p_n / dp;
      x -= dx;
      if (abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4)) {
        break;
      }
    }
    // Recompute the derivative at the converged root.
    Scalar p0(1);
    Scalar p1 = x;
    for (int m = 2; m <= order; ++m) {
      const Scalar p2 = (Scalar(2 * m - 1) * x * p1 - Scalar(m - 1) * p0) / Scalar(m);
      p0 = p1;
      p1 = p2;
    }
    dp = order == 1 ? Scalar(1) : Scalar(order) * (x * p1 - p0) / (x * x - Scalar(1));
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[i - 1] = -x;
    rule.nodes[order - i] = x;
    rule.weights[i - 1] = w;
    rule.weights[order - i] = w;
  }
  if (order % 2 == 1) {
    rule.nodes[order / 2] = Scalar(0);
  }
  return rule;
}

/// Composite rule over `panels` equal panels of [lo, hi].
template <typename Scalar, typename Function>
Scalar integrate_panels(const Function& f, Scalar lo, Scalar hi, Index panels, const QuadratureRule<Scalar>& rule) {
  if (panels < 1) {
    throw DomainError("integrate_panels requires at least one panel");
  }
  if (hi == lo) {
    return Scalar(0);
  }
  const Scalar width = (hi - lo) / static_cast<Scalar>(panels);
  const Scalar half = width / Scalar(2);
  Scalar total(0);
  for (Index p = 0; p < panels; ++p) {
    const Scalar mid = lo + (static_cast<Scalar>(p) + Scalar(0.5)) * width;
    Scalar panel(0);
    for (int q = 0; q < rule.order; ++q) {
      panel += rule.weights[q] * static_cast<Scalar>(f(mid + half * rule.nodes[q]));
    }
    total += panel * half;
  }
  return total;
}

/// int_lo^hi (approx - reference)^2 dx. This is the squared L2 distance, not
/// its root.
template <typename Scalar, typename Approx, typename Reference>
Scalar l2_error(const Approx& approx, const Reference& reference, Scalar lo, Scalar hi, Index panels,
                const QuadratureRule<Scalar>& rule) {
  return integrate_panels(
      [&](Scalar x) {
        const Scalar d = static_cast<Scalar>(approx(x)) - static_cast<Scalar>(reference(x));
        return d * d;
      },
      lo, hi, panels, rule);
}

/// sqrt of l2_error: the L2 norm of the difference.
template <typename Scalar, typename Approx, typename Reference>
Scalar l2_norm_error(const Approx& approx, const Reference& reference, Scalar lo, Scalar hi, Index panels,
                     const QuadratureRule<Scalar>& rule) {
  using std::sqrt;
  return sqrt(l2_error(approx, reference, lo, hi, panels, rule));
}

/// max |approx - reference| over `samples` equispaced points, endpoints
/// included.
template <typename Scalar, typename Approx, typename Reference>
Scalar max_error(const Approx& approx, const Reference& reference, Scalar lo, Scalar hi, Index samples) {
  if (samples < 2) {
    throw DomainError("max_error requires at least two samples");
  }
  using std::abs;
  const Scalar step = (hi - lo) / static_cast<Scalar>(samples - 1);
  Scalar worst(0);
  for (Index i = 0; i < samples; ++i) {
    const Scalar x = i + 1 == samples ? hi : lo + static_cast<Scalar>(i) * step;
    worst = std::max(worst, abs(static_cast<Scalar>(approx(x)) - static_cast<Scalar>(reference(x))));
  }
  return worst;
}

/// max_k |values_k - reference(x_k)| over the grid nodes.
template <typename Scalar, typename Reference>
Scalar nodal_max_error(const SampleVector<Scalar>& values, const Grid<Scalar>& grid, const Reference& reference) {
  if (values.size() != grid.size()) {
    throw DimensionError("sample vector length does not match grid");
  }
  using std::abs;
  Scalar worst(0);
  for (Index k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, abs(values[k] - static_cast<Scalar>(reference(grid.node(k)))));
  }
  return worst;
}

}  // namespace qspline
