#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qspline/quadrature.hpp"
#include "qspline/spline.hpp"

using namespace qspline;
using Vec = Vector<double>;

namespace {

Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const double x : values) {
    v[i++] = x;
  }
  return v;
}

double e_n_squared(const SplineModel<double>& s, const std::function<double(double)>& f) {
  const auto& g = s.grid();
  return l2_error(s, f, g.a(), g.b(), 4 * g.n(), gauss_legendre<double>(8));
}

}  // namespace

TEST_CASE("second differences") {
  SUBCASE("affine data has zero curvature") {
    const auto g = make_grid(-2.0, 3.0, 7);
    const auto d = second_differences(sample<double>([](double x) { return 5.0 * x - 2.0; }, g), g);
    CHECK(d.size() == 6);
    CHECK(d.cwiseAbs().maxCoeff() <= 1e-12 * 17.0 / (g.h() * g.h()));
  }
  SUBCASE("x^2 gives exactly 2") {
    const auto g = make_grid(0.0, 1.0, 8);
    const auto d = second_differences(sample<double>([](double x) { return x * x; }, g), g);
    for (Index k = 0; k < d.size(); ++k) {
      CHECK(d[k] == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
  SUBCASE("|x| samples on [-1,1], n=4") {
    const auto g = make_grid(-1.0, 1.0, 4);
    const auto d = second_differences(vec({1, 0.5, 0, 0.5, 1}), g);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 4.0);
    CHECK(d[2] == 0.0);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(second_differences(vec({1, 2, 3}), make_grid(0.0, 1.0, 4)), DimensionError);
  }
}

TEST_CASE("optimal a1") {
  CHECK(optimal_a1(Vec(Vec::Zero(5)), 6) == 0.0);
  CHECK(optimal_a1(vec({3.0}), 2) == doctest::Approx(1.5));
  CHECK(optimal_a1(vec({2, 2, 2}), 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(optimal_a1(vec({1, 2}), 4), DimensionError);
}

TEST_CASE("optimal a1 zeroes dE/da1") {
  std::mt19937 rng(11);
  for (Index n = 2; n <= 12; ++n) {
    const Vec delta = oracle::random_vector(rng, n - 1, 10.0);
    const double a1 = optimal_a1(delta, n);
    // a_k depends on a_1 with slope (-1)^{k+1}.
    const Vec a = coefficients_recursive(a1, delta);
    double gradient = 0.0;
    for (Index k = 0; k < n; ++k) {
      gradient += (k % 2 == 0 ? 1.0 : -1.0) * a[k];
    }
    CHECK(std::abs(gradient) <= 1e-12 * (1.0 + a.cwiseAbs().sum()));
  }
}

TEST_CASE("coefficients by recursion") {
  CHECK(coefficients_recursive(0.0, Vec(Vec::Zero(3))) == Vec::Zero(4));
  const Vec ones = coefficients_recursive(1.0, vec({2, 2, 2}));
  CHECK(ones == Vec::Ones(4));
  const Vec a = coefficients_recursive(0.3, vec({1, -1}));
  CHECK(a[0] == doctest::Approx(0.3));
  CHECK(a[1] == doctest::Approx(0.7));
  CHECK(a[2] == doctest::Approx(-1.7));
}

TEST_CASE("explicit coefficients") {
  CHECK(coefficients_explicit(Vec(Vec::Zero(4)), 5) == Vec::Zero(5));
  const Vec a = coefficients_explicit(vec({2, 2, 2}), 4);
  for (Index k = 0; k < 4; ++k) {
    CHECK(a[k] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("coefficient matrix") {
  SUBCASE("rows sum to zero") {
    for (Index n = 2; n <= 15; ++n) {
      const auto c = coefficient_matrix(n, 0.37);
      CHECK(c.entries.rows() == n);
      CHECK(c.entries.cols() == n + 1);
      const Vec sums = c.entries.rowwise().sum();
      CHECK(sums.cwiseAbs().maxCoeff() <= 1e-12 * c.entries.cwiseAbs().maxCoeff());
    }
  }
  SUBCASE("x^2 on [-1,1], n=4") {
    const auto g = make_grid(-1.0, 1.0, 4);
    const auto c = coefficient_matrix(4, 0.5);
    const Vec a = c.apply(sample<double>([](double x) { return x * x; }, g));
    for (Index k = 0; k < 4; ++k) {
      CHECK(a[k] == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("rejects bad arguments") {
    CHECK_THROWS_AS(coefficient_matrix(1, 0.1), DomainError);
    CHECK_THROWS_AS(coefficient_matrix(4, 0.0), DomainError);
  }
  SUBCASE("swapping the weights of the second-to-last column breaks it") {
    // The (2 beta_{n-2} + beta_{n-1}) variant of column n-1 disagrees with the
    // recursion, which pins down the (beta_{n-2} + 2 beta_{n-1}) form used.
    const Index n = 6;
    const double h = 0.25;
    auto c = coefficient_matrix(n, h);
    std::mt19937 rng(3);
    const Vec y = oracle::random_vector(rng, n + 1);
    const Vec truth = oracle::brute_force_coefficients(y, h);
    CHECK(oracle::relative_gap(c.apply(y), truth) <= 1e-10);
    for (Index k = 1; k <= n; ++k) {
      Vec beta = Vec::Zero(n + 1);
      for (Index j = 1; j < n; ++j) {
        beta[j] = static_cast<double>(j) / n - (j <= k - 1 ? 0.0 : 1.0);
      }
      const double sign = ((k + n - 1) % 2 == 0) ? 1.0 : -1.0;
      c.entries(k - 1, n - 1) = sign / (h * h) * (2.0 * beta[n - 2] + beta[n - 1]);
    }
    CHECK(oracle::relative_gap(c.apply(y), truth) > 1e-3);
  }
}

TEST_CASE("property: three coefficient paths agree with the brute-force oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick_n(2, 12);
  std::uniform_real_distribution<double> pick_h(0.01, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = pick_n(rng);
    const auto g = make_grid(-1.0, -1.0 + n * pick_h(rng), n);
    const Vec y = oracle::random_vector(rng, n + 1, 5.0);
    const Vec delta = second_differences(y, g);
    const Vec truth = oracle::brute_force_coefficients(y, g.h());
    const Vec recursive = coefficients_recursive(optimal_a1(delta, n), delta);
    const Vec explicit_ = coefficients_explicit(delta, n);
    const Vec matrix = coefficient_matrix(n, g.h()).apply(y);
    INFO("trial " << trial << " n=" << n);
    CHECK(oracle::relative_gap(recursive, truth) <= 1e-10);
    CHECK(oracle::relative_gap(explicit_, recursive) <= 1e-10);
    CHECK(oracle::relative_gap(matrix, recursive) <= 1e-10);
  }
}

TEST_CASE("build_spline interpolates and is C1") {
  std::mt19937 rng(5);
  for (Index n = 2; n <= 40; n += 3) {
    const auto g = make_grid(-0.7, 1.9, n);
    const Vec y = oracle::random_vector(rng, n + 1, 3.0);
    const auto s = build_spline(g, y);
    const double scale = y.cwiseAbs().maxCoeff();
    for (Index k = 1; k <= n; ++k) {
      CHECK(std::abs(s.piece_value(k, g.node(k - 1)) - y[k - 1]) <= 1e-12 * scale);
      CHECK(std::abs(s.piece_value(k, g.node(k)) - y[k]) <= 1e-12 * scale);
    }
    const double slope_scale = s.coefficients().cwiseAbs().maxCoeff() * g.h() + scale / g.h();
    for (Index k = 1; k < n; ++k) {
      const double left = s.piece_derivative(k, g.node(k));
      const double right = s.piece_derivative(k + 1, g.node(k));
      CHECK(std::abs(left - right) <= 1e-10 * slope_scale);
    }
  }
}

TEST_CASE("affine data is reproduced exactly") {
  for (Index n : {2, 3, 8, 31}) {
    const auto g = make_grid(-1.0, 2.0, n);
    const auto f = [](double x) { return 5.0 * x - 2.0; };
    const auto s = build_spline(g, sample<double>(f, g));
    CHECK(s.coefficients().cwiseAbs().maxCoeff() <= 1e-9);
    for (double x = -1.0; x <= 2.0; x += 0.0137) {
      CHECK(s(x) == doctest::Approx(f(x)).epsilon(1e-12));
      CHECK(evaluate_derivative(s, x) == doctest::Approx(5.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("quadratics are reproduced for even n only") {
  const auto f = [](double x) { return x * x; };
  for (Index n : {2, 4, 10, 24}) {
    const auto g = make_grid(-1.0, 1.0, n);
    const auto s = build_spline(g, sample<double>(f, g));
    for (double x = -1.0; x <= 1.0; x += 0.01) {
      CHECK(s(x) == doctest::Approx(f(x)).epsilon(1e-12));
    }
  }
  const auto g4 = make_grid(-1.0, 1.0, 4);
  CHECK(evaluate_derivative(build_spline(g4, sample<double>(f, g4)), 0.3) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("evaluate") {
  const auto g = make_grid(0.0, 2.0, 5);
  std::mt19937 rng(9);
  const Vec y = oracle::random_vector(rng, 6);
  const auto s = build_spline(g, y);
  SUBCASE("nodes return samples") {
    for (Index k = 0; k <= 5; ++k) {
      CHECK(evaluate(s, g.node(k)) == doctest::Approx(y[k]).epsilon(1e-13));
    }
  }
  SUBCASE("midpoint is the chord value minus a_k h^2/4") {
    for (Index k = 1; k <= 5; ++k) {
      const double mid = 0.5 * (g.node(k - 1) + g.node(k));
      const double chord = 0.5 * (y[k - 1] + y[k]);
      CHECK(evaluate(s, mid) == doctest::Approx(chord - s.coefficients()[k - 1] * g.h() * g.h() / 4.0));
    }
  }
  SUBCASE("matches the definition evaluated independently") {
    for (double x = 0.0; x <= 2.0; x += 0.0173) {
      CHECK(s(x) == doctest::Approx(oracle::spline_value(y, s.coefficients(), 0.0, g.h(), x)).epsilon(1e-13));
    }
  }
  SUBCASE("piece membership") {
    CHECK(s.piece_index(0.0) == 1);
    CHECK(s.piece_index(0.4) == 1);
    CHECK(s.piece_index(0.41) == 2);
    CHECK(s.piece_index(2.0) == 5);
  }
  SUBCASE("out of domain") {
    CHECK_THROWS_AS(evaluate(s, -1e-9), DomainError);
    CHECK_THROWS_AS(evaluate(s, 2.0 + 1e-9), DomainError);
    CHECK_THROWS_AS(evaluate_derivative(s, 3.0), DomainError);
  }
}

TEST_CASE("fluctuation energy") {
  const auto g = make_grid(-1.0, 1.0, 4);
  CHECK(fluctuation_energy(build_spline(g, sample<double>([](double x) { return 3.0 * x; }, g))) ==
        doctest::Approx(0.0));
  const auto sq = build_spline(g, sample<double>([](double x) { return x * x; }, g));
  CHECK(fluctuation_energy(sq) == doctest::Approx(std::pow(0.5, 5) / 30.0 * 4.0));

  SUBCASE("matches the integral of (P_k - p_k)^2") {
    std::mt19937 rng(21);
    const auto g7 = make_grid(0.0, 1.4, 7);
    const auto s = build_spline(g7, Vec(oracle::random_vector(rng, 8)));
    double integral = 0.0;
    for (Index k = 1; k <= 7; ++k) {
      const double l = g7.node(k - 1);
      const double r = g7.node(k);
      const double ak = s.coefficients()[k - 1];
      integral += oracle::simpson([&](double x) { return std::pow(ak * (x - l) * (x - r), 2); }, l, r, 2000);
    }
    CHECK(fluctuation_energy(s) == doctest::Approx(integral).epsilon(1e-10));
  }
}

TEST_CASE("property: optimal a1 minimizes the fluctuation energy") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> pick_n(2, 20);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = pick_n(rng);
    const auto g = make_grid(0.0, 1.0, n);
    const Vec y = oracle::random_vector(rng, n + 1, 2.0);
    const Vec delta = second_differences(y, g);
    const double a1 = optimal_a1(delta, n);
    const double best = fluctuation_energy(coefficients_recursive(a1, delta), g.h());
    CHECK(best == doctest::Approx(fluctuation_energy(build_spline(g, y))).epsilon(1e-10));
    for (const double eps : {1e-3, 1e-1, 1.0}) {
      CHECK(fluctuation_energy(coefficients_recursive(a1 + eps, delta), g.h()) > best);
      CHECK(fluctuation_energy(coefficients_recursive(a1 - eps, delta), g.h()) > best);
    }
  }
}

TEST_CASE("property: parity is conserved") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> freq(0.5, 6.0);
  std::uniform_real_distribution<double> half_width(0.5, 3.0);
  std::uniform_int_distribution<int> pick_n(2, 30);

  int cases_seen[2][2] = {{0, 0}, {0, 0}};
  for (int trial = 0; trial < 50; ++trial) {
    for (const bool even : {true, false}) {
      const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng), w = freq(rng);
      const std::function<double(double)> f =
          even ? std::function<double(double)>([=](double x) { return c0 + c1 * x * x + c2 * std::pow(x, 4) + c3 * std::cos(w * x); })
               : std::function<double(double)>([=](double x) { return c0 * x + c1 * std::pow(x, 3) + c3 * std::sin(w * x); });
      const double L = half_width(rng);
      Index n = pick_n(rng);
      // Alternate n parity so all four (function parity, n parity) cases occur.
      if ((trial % 2 == 0) != (n % 2 == 0)) {
        n += 1;
      }
      ++cases_seen[even ? 0 : 1][n % 2];
      const auto g = make_grid(-L, L, n);
      const auto s = build_spline(g, sample<double>(f, g));
      const Vec& a = s.coefficients();
      const double sign = even ? 1.0 : -1.0;
      const double scale = a.cwiseAbs().maxCoeff() + 1e-300;
      INFO("trial " << trial << " even=" << even << " n=" << n);
      for (Index k = 1; k <= n; ++k) {
        CHECK(std::abs(a[k - 1] - sign * a[n - k]) <= 1e-10 * scale);
      }
      const double value_scale = s.samples().cwiseAbs().maxCoeff() + 1e-300;
      std::uniform_real_distribution<double> pick_x(-L, L);
      for (int i = 0; i < 100; ++i) {
        const double x = pick_x(rng);
        CHECK(std::abs(s(x) - sign * s(-x)) <= 1e-10 * value_scale);
      }
    }
  }
  for (const auto& row : cases_seen) {
    CHECK(row[0] > 0);
    CHECK(row[1] > 0);
  }
}

TEST_CASE("parity needs the optimal a1 when function and n parity differ") {
  // Even data with even n: any other a_1 breaks the symmetry.
  const auto g = make_grid(-1.0, 1.0, 6);
  const Vec y = sample<double>([](double x) { return std::cos(3.0 * x); }, g);
  const Vec delta = second_differences(y, g);
  const Vec a = coefficients_recursive(optimal_a1(delta, 6) + 0.1, delta);
  CHECK(std::abs(a[0] - a[5]) > 1e-3);
  // Even data with odd n: every a_1 keeps it.
  const auto g5 = make_grid(-1.0, 1.0, 5);
  const Vec y5 = sample<double>([](double x) { return std::cos(3.0 * x); }, g5);
  const Vec d5 = second_differences(y5, g5);
  const Vec a5 = coefficients_recursive(optimal_a1(d5, 5) + 0.1, d5);
  CHECK(a5[0] == doctest::Approx(a5[4]).epsilon(1e-12));
}

TEST_CASE("interpolation error of |x| and sin(2 pi x)") {
  const auto abs_f = [](double x) { return std::abs(x); };
  const auto g = make_grid(-1.0, 1.0, 10);
  const double e_abs = e_n_squared(build_spline(g, sample<double>(abs_f, g)), abs_f);
  CHECK(e_abs >= 2.6e-3 / 2.0);
  CHECK(e_abs <= 2.6e-3 * 2.0);

  const auto sin_f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
  const double e_sin = e_n_squared(build_spline(g, sample<double>(sin_f, g)), sin_f);
  CHECK(e_sin >= 4.0e-4 / 2.0);
  CHECK(e_sin <= 4.0e-4 * 2.0);
}

TEST_CASE("convergence study") {
  const double pi = std::numbers::pi;
  const auto sin_f = [=](double x) { return std::sin(2.0 * pi * x); };
  SUBCASE("sin(2 pi x) respects the bound") {
    const auto r = convergence_study(sin_f, 4.0 * pi * pi, -1.0, 1.0, {10, 50, 100});
    CHECK(r.all_within_bound());
    for (const auto& rec : r.records) {
      CHECK(rec.bound == doctest::Approx(4.0 * pi * pi * rec.h * (2.0 - rec.h / 2.0)));
    }
  }
  SUBCASE("max error is non-increasing under refinement") {
    const auto r = convergence_study(sin_f, 4.0 * pi * pi, -1.0, 1.0, {10, 20, 40, 80});
    for (std::size_t i = 1; i < r.records.size(); ++i) {
      CHECK(r.records[i].max_error <= r.records[i - 1].max_error);
    }
    CHECK(r.records[0].observed_order > 0.9);
  }
  SUBCASE("affine functions have zero error") {
    const auto r = convergence_study([](double x) { return 2.0 - x; }, 0.0, 0.0, 3.0, {2, 5, 9});
    for (const auto& rec : r.records) {
      CHECK(rec.max_error <= 1e-14);
      CHECK(rec.within_bound);
    }
  }
  SUBCASE("|x| with a node at the kink still carries an O(h) error") {
    // The spline is C1, so it cannot follow the corner even when 0 is a node.
    const auto r = convergence_study([](double x) { return std::abs(x); }, 1.0, -1.0, 1.0, {10, 20, 40});
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      CHECK(r.records[i].max_error > 0.0);
    }
    CHECK(r.records[0].observed_order == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("property: error bound holds for random C2 functions") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> amp(-3.0, 3.0);
  std::uniform_real_distribution<double> freq(0.2, 8.0);
  std::uniform_real_distribution<double> left(-2.0, 1.0);
  std::uniform_real_distribution<double> width(0.3, 4.0);
  std::uniform_int_distribution<int> pick_n(2, 60);
  for (int trial = 0; trial < 20; ++trial) {
    const double A = amp(rng), B = amp(rng), C = amp(rng), w = freq(rng), phase = amp(rng);
    const auto f = [=](double x) { return A * std::sin(w * x + phase) + B * x * x + C * x; };
    const double m = std::abs(A) * w * w + 2.0 * std::abs(B);
    const double a = left(rng);
    const double b = a + width(rng);
    const auto r = convergence_study(f, m, a, b, {static_cast<Index>(pick_n(rng))});
    INFO("trial " << trial);
    CHECK(r.all_within_bound());
  }
}

TEST_CASE("long double instantiation") {
  const auto g = make_grid<long double>(-1.0L, 1.0L, 8);
  const auto s = build_spline(g, sample<long double>([](long double x) { return x * x * x; }, g));
  CHECK(static_cast<double>(s(0.3L)) == doctest::Approx(0.027).epsilon(0.05));
  CHECK(static_cast<double>(s(g.node(3))) == doctest::Approx(static_cast<double>(std::pow(g.node(3), 3))));
}
