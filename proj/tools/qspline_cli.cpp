#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qspline/commands.hpp"
#include "qspline/registry.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct OutputOptions {
  std::string out;
  bool pretty = false;
};

void emit(const qspline::CsvReport& report, const OutputOptions& opt) {
  std::ostringstream text;
  if (opt.pretty) {
    report.write_pretty(text);
  } else {
    report.write_csv(text);
  }
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text.str();
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) {
    throw qspline::commands::IoError("cannot open '" + opt.out + "' for writing");
  }
  file << text.str();
}

std::pair<double, double> parse_bracket(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw qspline::commands::UsageError("--bracket expects lo,hi");
  }
  try {
    const double lo = std::stod(text.substr(0, comma));
    const double hi = std::stod(text.substr(comma + 1));
    if (!(lo < hi)) {
      throw qspline::commands::UsageError("--bracket requires lo < hi");
    }
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw qspline::commands::UsageError("--bracket expects two numbers, got '" + text + "'");
  }
}

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
  cmd->add_option("--out,-o", opt.out, "Output path for the CSV (default stdout)");
  cmd->add_flag("--pretty", opt.pretty, "Render an aligned text table instead of CSV");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cmds = qspline::commands;

  CLI::App app{"Explicit variational quadratic spline: interpolation and integral-equation solvers"};
  app.require_subcommand(1);

  OutputOptions output;
  int quad_order = 8;
  std::string function_id;
  std::string problem_id;
  long n = 10;
  std::optional<double> a;
  std::optional<double> b;

  auto* interp = app.add_subcommand("interpolate", "Spline-interpolate a registered function and report e_n");
  interp->add_option("--function,-f", function_id, "Function id")->required();
  interp->add_option("--n", n, "Number of subintervals")->check(CLI::PositiveNumber);
  interp->add_option("--a", a, "Left endpoint (default: registry interval)");
  interp->add_option("--b", b, "Right endpoint (default: registry interval)");
  interp->add_option("--quad-order", quad_order, "Gauss-Legendre order for the error integrals");
  std::string plot_prefix;
  interp->add_option("--plot", plot_prefix, "Write <prefix>_spline.dat and <prefix>_exact.dat");
  add_output_flags(interp, output);

  auto* lag = app.add_subcommand("lagrange", "Global polynomial interpolation error on the same nodes");
  lag->add_option("--function,-f", function_id, "Function id")->required();
  lag->add_option("--n", n, "Number of subintervals")->check(CLI::PositiveNumber);
  lag->add_option("--a", a, "Left endpoint");
  lag->add_option("--b", b, "Right endpoint");
  lag->add_option("--quad-order", quad_order, "Gauss-Legendre order");
  add_output_flags(lag, output);

  auto* solve = app.add_subcommand("solve", "Solve a registered integral equation");
  solve->add_option("--problem,-p", problem_id, "Problem id")->required();
  solve->add_option("--n", n, "Number of subintervals")->check(CLI::PositiveNumber);
  solve->add_option("--quad-order", quad_order, "Gauss-Legendre order");
  std::string bracket;
  solve->add_option("--bracket", bracket, "Eigenvalue search interval lo,hi (default: registry, else -10,10)");
  add_output_flags(solve, output);

  auto* repro = app.add_subcommand("reproduce", "Recompute a reference table and check it against stored values");
  std::string table = "all";
  repro->add_option("--table,-t", table, "1..8, wang or all");
  repro->add_option("--quad-order", quad_order, "Gauss-Legendre order");
  add_output_flags(repro, output);

  auto* conv = app.add_subcommand("converge", "Measure max error against the M h (b - a - h/2) bound");
  conv->add_option("--function,-f", function_id, "Function id")->required();
  std::vector<long> ns{10, 20, 40, 80};
  conv->add_option("--ns", ns, "Ascending list of n")->delimiter(',');
  std::optional<double> m_bound;
  conv->add_option("--M", m_bound, "Bound on |f''| (default: registry value)");
  add_output_flags(conv, output);

  auto* list = app.add_subcommand("list", "List registered functions and problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*interp) {
      cmds::InterpolateArgs args{function_id, a, b, n, quad_order, std::nullopt};
      if (!plot_prefix.empty()) {
        args.plot_prefix = plot_prefix;
      }
      emit(cmds::interpolate(args), output);
      return kExitOk;
    }
    if (*lag) {
      emit(cmds::lagrange({function_id, a, b, n, quad_order}), output);
      return kExitOk;
    }
    if (*solve) {
      cmds::SolveArgs args{problem_id, n, quad_order, std::nullopt, std::nullopt};
      if (!bracket.empty()) {
        std::tie(args.bracket_lo, args.bracket_hi) = parse_bracket(bracket);
      }
      emit(cmds::solve(args), output);
      return kExitOk;
    }
    if (*repro) {
      const auto result = cmds::reproduce(table, quad_order);
      emit(result.report, output);
      return result.all_passed ? kExitOk : kExitTolerance;
    }
    if (*conv) {
      const auto result = cmds::converge({function_id, std::vector<qspline::Index>(ns.begin(), ns.end()), m_bound});
      emit(result.report, output);
      return result.all_within_bound ? kExitOk : kExitTolerance;
    }
    if (*list) {
      for (const auto& f : qspline::registry::functions()) {
        std::cout << "function  " << f.id << "  " << f.description << '\n';
      }
      for (const auto& p : qspline::registry::problems()) {
        std::cout << "problem   " << p.id << "  " << p.description << '\n';
      }
      return kExitOk;
    }
  } catch (const qspline::registry::UnknownIdError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cmds::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cmds::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qspline::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
