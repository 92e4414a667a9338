#include "qspline/registry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qspline/quadrature.hpp"

namespace qspline::registry {

namespace {

std::vector<FunctionEntry> make_functions() {
  using std::numbers::pi;
  std::vector<FunctionEntry> out;
  out.push_back({"abs", "|x| on [-1,1]", [](double x) { return std::abs(x); }, -1.0, 1.0, std::nullopt});
  out.push_back({"sin2pix", "sin(2 pi x) on [-1,1]", [](double x) { return std::sin(2.0 * pi * x); }, -1.0, 1.0,
                 4.0 * pi * pi});
  out.push_back({"linear", "5x - 2 on [-1,1]", [](double x) { return 5.0 * x - 2.0; }, -1.0, 1.0, 0.0});
  out.push_back({"square", "x^2 on [-1,1]", [](double x) { return x * x; }, -1.0, 1.0, 2.0});
  out.push_back({"runge", "1/(1+25x^2) on [-1,1]", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0,
                 50.0});
  out.push_back({"exp", "e^x on [0,1]", [](double x) { return std::exp(x); }, 0.0, 1.0, std::numbers::e});
  return out;
}

ProblemEntry entry(std::string id, std::string description, EquationKind kind, Kernel<double> kernel,
                   ScalarFunction<double> forcing, double lambda, double a, double b, ScalarFunction<double> reference) {
  ProblemEntry e;
  e.id = std::move(id);
  e.description = std::move(description);
  e.problem.kind = kind;
  e.problem.kernel = std::move(kernel);
  e.problem.forcing = std::move(forcing);
  e.problem.lambda = lambda;
  e.problem.a = a;
  e.problem.b = b;
  e.problem.reference = std::move(reference);
  return e;
}

std::vector<ProblemEntry> make_problems() {
  std::vector<ProblemEntry> out;

  // y + 2 int_0^1 e^{x-t} y dt = 2x e^x, i.e. lambda = -2 in the
  // y - lambda int K y = f convention.
  out.push_back(entry(
      "krasnov1", "Fredholm 2nd kind, K=e^(x-s), f=2x e^x, lambda=-2", EquationKind::fredholm2,
      [](double x, double s) { return std::exp(x - s); }, [](double x) { return 2.0 * x * std::exp(x); }, -2.0, 0.0,
      1.0, [](double x) { return std::exp(x) * (2.0 * x - 2.0 / 3.0); }));

  // Rank-two kernel with a double characteristic value -3 and eigenfunction
  // x(1-2x).
  auto eigen = entry(
      "krasnov2", "Fredholm eigenproblem, K=2xs-4x^2", EquationKind::fredholm_eigen,
      [](double x, double s) { return 2.0 * x * s - 4.0 * x * x; }, nullptr, 0.0, 0.0, 1.0,
      [](double x) { return x * (1.0 - 2.0 * x); });
  eigen.exact_lambda = -3.0;
  eigen.bracket_lo = -10.0;
  eigen.bracket_hi = 0.0;
  out.push_back(std::move(eigen));

  out.push_back(entry(
      "wang", "Fredholm 2nd kind, K=x+s, lambda=1, solution cos x", EquationKind::fredholm2,
      [](double x, double s) { return x + s; },
      [](double x) { return 1.0 + std::cos(x) - (1.0 + x) * std::sin(1.0) - std::cos(1.0); }, 1.0, 0.0, 1.0,
      [](double x) { return std::cos(x); }));

  out.push_back(entry(
      "identity", "Fredholm with lambda=0, affine forcing", EquationKind::fredholm2,
      [](double x, double s) { return std::exp(x * s); }, [](double x) { return 1.0 + 2.0 * x; }, 0.0, 0.0, 1.0,
      [](double x) { return 1.0 + 2.0 * x; }));

  // y = 1/(1+x^2) - int_0^x s/(1+x^2) y ds.
  out.push_back(entry(
      "krasnov3", "Volterra 2nd kind, K=s/(1+x^2), lambda=-1", EquationKind::volterra2,
      [](double x, double s) { return s / (1.0 + x * x); }, [](double x) { return 1.0 / (1.0 + x * x); }, -1.0, 0.0,
      1.0, [](double x) { return std::pow(1.0 + x * x, -1.5); }));

  // e^{-x^2} + (1/2) x (1 - e^{-x^2}) = y + int_0^x x s y ds.
  out.push_back(entry(
      "malek1", "Volterra 2nd kind, K=xs, lambda=-1, solution e^(-x^2)", EquationKind::volterra2,
      [](double x, double s) { return x * s; },
      [](double x) { return std::exp(-x * x) + 0.5 * x * (1.0 - std::exp(-x * x)); }, -1.0, 0.0, 1.0,
      [](double x) { return std::exp(-x * x); }));

  // x^3 = int_0^x (x-s)^2 y ds, solution y = 3.
  out.push_back(entry(
      "krasnov4", "Volterra 1st kind, K=(x-s)^2, f=x^3", EquationKind::volterra1,
      [](double x, double s) { return (x - s) * (x - s); }, [](double x) { return x * x * x; }, 0.0, 0.0, 1.0,
      [](double) { return 3.0; }));
  return out;
}

template <typename Entry>
const Entry& find(const std::vector<Entry>& all, std::string_view id, std::string_view what) {
  const auto it = std::find_if(all.begin(), all.end(), [&](const Entry& e) { return e.id == id; });
  if (it == all.end()) {
    std::string known;
    for (const auto& e : all) {
      known += (known.empty() ? "" : ", ") + e.id;
    }
    throw UnknownIdError("unknown " + std::string(what) + " '" + std::string(id) + "' (known: " + known + ")");
  }
  return *it;
}

}  // namespace

const std::vector<FunctionEntry>& functions() {
  static const auto all = make_functions();
  return all;
}

const std::vector<ProblemEntry>& problems() {
  static const auto all = make_problems();
  return all;
}

const FunctionEntry& find_function(std::string_view id) { return find(functions(), id, "function"); }

const ProblemEntry& find_problem(std::string_view id) { return find(problems(), id, "problem"); }

IntegralProblem<double> instantiate(const ProblemEntry& entry, Index n) {
  auto p = entry.problem;
  p.n = n;
  return p;
}

double reference_residual(const ProblemEntry& entry) {
  const auto& p = entry.problem;
  const auto rule = gauss_legendre<double>(20);
  constexpr Index panels = 32;
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double x = p.a + (p.b - p.a) * i / 10.0;
    const double upper =
        (p.kind == EquationKind::volterra1 || p.kind == EquationKind::volterra2) ? x : p.b;
    const double integral =
        integrate_panels([&](double s) { return p.kernel(x, s) * p.reference(s); }, p.a, upper, panels, rule);
    const double y = p.reference(x);
    double r = 0.0;
    switch (p.kind) {
      case EquationKind::fredholm2:
        r = y - p.lambda * integral - p.forcing(x);
        break;
      case EquationKind::fredholm_eigen:
        r = y - entry.exact_lambda.value_or(0.0) * integral;
        break;
      case EquationKind::volterra2:
        r = y - p.forcing(x) - p.lambda * integral;
        break;
      case EquationKind::volterra1:
        r = integral - p.forcing(x);
        break;
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace qspline::registry
