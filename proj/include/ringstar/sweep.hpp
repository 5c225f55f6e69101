#pragma once

// Resilient vs survivable comparison over a grid of failure budgets.

#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"
#include "ringstar/oracle.hpp"
#include "ringstar/solve.hpp"

namespace ringstar {

struct SweepRow {
  double F = 0.0;
  double rrsp_opt = 0.0;
  double srsp_opt = 0.0;
  std::string cheaper;  // "rrsp", "srsp" or "tie"
  std::optional<NodeId> worst_hub;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  bool heuristic = false;
  std::vector<std::string> warnings;
};

inline std::string cheaper_label(double rrsp, double srsp) {
  if (std::abs(rrsp - srsp) <= kTolerance) return "tie";
  return rrsp < srsp ? "rrsp" : "srsp";
}

// Evenly spaced budgets f_min, ..., f_max (steps >= 2 points).
inline std::vector<double> budget_grid(double f_min, double f_max, int steps) {
  if (steps < 2) throw std::invalid_argument("a sweep needs at least two steps");
  if (!(f_min >= 0.0) || !(f_min <= f_max)) throw std::invalid_argument("need 0 <= f_min <= f_max");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = i + 1 == steps ? f_max : f_min + (f_max - f_min) * i / (steps - 1);
  return grid;
}

inline SweepReport sweep(const Instance& inst, double f_min, double f_max, int steps, Method method,
                         const SolverOptions& options = {}) {
  const auto grid = budget_grid(f_min, f_max, steps);
  if (method == Method::Enum && inst.n > EnumerationOptions{}.max_nodes)
    throw std::invalid_argument("enumeration cannot handle n = " + std::to_string(inst.n));

  SweepReport report;
  if (method == Method::Grasp) {
    report.heuristic = true;
    report.warnings.push_back("grasp is a heuristic; values are not proven optimal");
  }

  // The survivable objective does not depend on F: solve it once.
  const Method srsp_method = method == Method::Benders ? Method::Bnb : method;
  SolveOutcome srsp = solve(inst, Problem::Srsp, srsp_method, options);
  if (!srsp.result.optimal && method != Method::Grasp) {
    report.heuristic = true;
    report.warnings.push_back("srsp solve stopped before proving optimality");
  }

  for (double F : grid) {
    Instance at = with_budget(inst, F);
    SolveOutcome rrsp = solve(at, Problem::Rrsp, method, options);
    if (!rrsp.result.optimal && method != Method::Grasp) {
      report.heuristic = true;
      report.warnings.push_back("rrsp solve at F = " + std::to_string(F) +
                                " stopped before proving optimality");
    }
    SweepRow row;
    row.F = F;
    row.rrsp_opt = rrsp.result.objective;
    row.srsp_opt = srsp.result.objective;
    row.cheaper = cheaper_label(row.rrsp_opt, row.srsp_opt);
    row.worst_hub = rrsp_objective(at, rrsp.result.solution).worst_hub;
    report.rows.push_back(std::move(row));
  }
  return report;
}

// Fixed six-decimal rendering, independent of the global locale.
inline std::string format_fixed(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, end);
}

// Header F,rrsp_opt,srsp_opt,cheaper,worst_hub; warnings precede it as
// '#' lines. A missing worst hub is an empty field.
inline std::string to_csv(const SweepReport& report) {
  std::string out;
  for (const auto& w : report.warnings) out += "# warning: " + w + "\n";
  out += "F,rrsp_opt,srsp_opt,cheaper,worst_hub\n";
  for (const auto& r : report.rows) {
    out += format_fixed(r.F) + "," + format_fixed(r.rrsp_opt) + "," + format_fixed(r.srsp_opt) + "," +
           r.cheaper + "," + (r.worst_hub ? std::to_string(*r.worst_hub) : std::string()) + "\n";
  }
  return out;
}

}  // namespace ringstar
