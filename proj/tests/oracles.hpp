#pragma once

// Test-only reference computations. None of these call into the library's
// coefficient, quadrature or elimination code.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// Coefficients from the C^1 recursion, with a_1 located as the vertex of the
/// parabola sum a_k^2 (a_1) rather than by the closed form.
inline Eigen::VectorXd brute_force_coefficients(const Eigen::VectorXd& y, double h) {
  const Eigen::Index n = y.size() - 1;
  std::vector<double> delta(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) {
    delta[k - 1] = (y[k - 1] - 2.0 * y[k] + y[k + 1]) / (h * h);
  }
  const auto run = [&](double a1) {
    Eigen::VectorXd a(n);
    a[0] = a1;
    for (Eigen::Index k = 1; k < n; ++k) {
      a[k] = delta[k - 1] - a[k - 1];
    }
    return a;
  };
  // E(a_1) is an exact parabola in a_1; three samples determine its vertex.
  const double s = run(0.0).cwiseAbs().maxCoeff() + 1.0;
  const double e_minus = run(-s).squaredNorm();
  const double e_zero = run(0.0).squaredNorm();
  const double e_plus = run(s).squaredNorm();
  return run(s * (e_minus - e_plus) / (2.0 * (e_minus - 2.0 * e_zero + e_plus)));
}

/// Evaluates the piecewise quadratic straight from its definition.
inline double spline_value(const Eigen::VectorXd& y, const Eigen::VectorXd& a, double left, double h, double x) {
  const Eigen::Index n = a.size();
  Eigen::Index k = static_cast<Eigen::Index>(std::floor((x - left) / h)) + 1;
  k = std::min<Eigen::Index>(std::max<Eigen::Index>(k, 1), n);
  const double xl = left + (k - 1) * h;
  const double xr = left + k * h;
  return y[k - 1] * (xr - x) / h + y[k] * (x - xl) / h + a[k - 1] * (x - xl) * (x - xr);
}

/// Composite Simpson rule, independent of the Gauss-Legendre code.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
  if (intervals % 2 != 0) {
    ++intervals;
  }
  const double h = (hi - lo) / intervals;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return sum * h / 3.0;
}

inline double cofactor_determinant(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) {
    return m(0, 0);
  }
  double det = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index cj = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != col) {
          minor(i - 1, cj++) = m(i, j);
        }
      }
    }
    det += (col % 2 == 0 ? 1.0 : -1.0) * m(0, col) * cofactor_determinant(minor);
  }
  return det;
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, Eigen::Index size, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    v[i] = u(rng);
  }
  return v;
}

inline double relative_gap(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double scale = std::max({x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff(), 1e-300});
  return (x - y).cwiseAbs().maxCoeff() / scale;
}

}  // namespace oracle
