#pragma once

// One entry point over every solution method.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ringstar/benders.hpp"
#include "ringstar/grasp.hpp"
#include "ringstar/model.hpp"
#include "ringstar/oracle.hpp"
#include "ringstar/result.hpp"
#include "ringstar/solver.hpp"

namespace ringstar {

enum class Method { Enum, Bnb, Benders, Grasp };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Enum:
      return "enum";
    case Method::Bnb:
      return "bnb";
    case Method::Benders:
      return "benders";
    case Method::Grasp:
      return "grasp";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "enum") return Method::Enum;
  if (s == "bnb") return Method::Bnb;
  if (s == "benders") return Method::Benders;
  if (s == "grasp") return Method::Grasp;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct SolveOutcome {
  SolverResult result;
  std::optional<BendersState> benders;  // set for Method::Benders
};

inline constexpr int kDefaultGraspIterations = 50;

// Benders applies to the resilient variant only; other problems are refused.
// Enumeration results are always optimal and carry the enumeration count in
// `nodes`.
inline SolveOutcome solve(const Instance& inst, Problem problem, Method method,
                          const SolverOptions& options = {}) {
  SolveOutcome out;
  switch (method) {
    case Method::Enum: {
      Stopwatch watch;
      OracleResult o = solve_exact(inst, problem);
      out.result.solution = o.solution;
      out.result.objective = o.optimum;
      out.result.lower_bound = o.optimum;
      out.result.nodes = o.count;
      out.result.wall_time = watch.elapsed();
      finalize(out.result);
      break;
    }
    case Method::Bnb:
      out.result = solve_bnb(inst, problem, options);
      break;
    case Method::Benders: {
      if (problem != Problem::Rrsp)
        throw std::invalid_argument("the Benders decomposition solves rrsp only");
      BendersResult b = solve_benders(inst, options);
      out.result = std::move(b.result);
      out.benders = std::move(b.state);
      break;
    }
    case Method::Grasp:
      out.result = grasp(inst, problem, kDefaultGraspIterations, options.seed);
      break;
  }
  return out;
}

}  // namespace ringstar
