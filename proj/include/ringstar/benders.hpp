#pragma once

// Logic-based Benders decomposition of the resilient variant. The master
// minimises construction cost plus eta under the pooled cuts (solved by the
// branch-and-bound in master mode); the subproblem evaluates the worst
// single-hub failure of the master design and returns the cut of that hub.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ringstar/cut.hpp"
#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"
#include "ringstar/result.hpp"
#include "ringstar/solver.hpp"

namespace ringstar {

struct SubproblemResult {
  std::optional<NodeId> worst_hub;
  double rate = 0.0;
  std::optional<BendersCut> cut;
};

inline SubproblemResult subproblem(const Instance& inst, const Solution& design) {
  require_feasible(inst, design);
  SubproblemResult r;
  auto [rate, hub] = detail::worst_repair(inst, design);
  r.rate = rate;
  r.worst_hub = hub;
  if (hub) {
    for (std::size_t i = 0; i < design.hubs.size(); ++i)
      if (design.hubs[i] == *hub) r.cut = make_cut(inst, design, i);
  }
  return r;
}

struct BendersIteration {
  std::size_t iteration;
  double lower_bound;
  double upper_bound;
  std::size_t cuts;
  double time;
};

struct BendersState {
  std::size_t iteration = 0;
  Solution design;  // last master design
  double eta = 0.0;
  std::vector<BendersCut> pool;
  std::vector<BendersIteration> trajectory;
  std::vector<Solution> designs;  // every master design, in order
};

struct BendersResult {
  SolverResult result;
  BendersState state;
};

// Runs master/subproblem rounds until UB - LB <= 1e-6 or the time limit.
inline BendersResult solve_benders(const Instance& inst, const SolverOptions& options = {}) {
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Stopwatch watch;
  Deadline deadline(options.time_limit);
  BendersResult out;
  BendersState& st = out.state;
  SolverResult& res = out.result;
  double lower = -detail::kInf;
  double upper = detail::kInf;

  while (true) {
    ++st.iteration;
    SolverOptions master_options = options;
    master_options.time_limit = deadline.remaining();
    SolverResult master = solve_master(inst, st.pool, master_options);
    res.nodes += master.nodes;
    lower = std::max(lower, master.lower_bound);

    st.design = master.solution;
    st.designs.push_back(master.solution);
    st.eta = pooled_eta(inst, st.pool, master.solution);
    SubproblemResult sub = subproblem(inst, master.solution);
    const double value = detail::rsp_cost(inst, master.solution) + inst.failure_budget * sub.rate;
    if (value < upper) {
      upper = value;
      res.solution = master.solution;
    }
    lower = std::min(lower, upper);
    st.trajectory.push_back({st.iteration, lower, upper, st.pool.size(), watch.elapsed()});
    res.trace.push_back({lower, upper});

    if (upper - lower <= kTolerance) break;
    if (deadline.expired() || !sub.cut) break;
    bool duplicate = false;
    for (const auto& c : st.pool) duplicate = duplicate || c.same_key(*sub.cut);
    // A repeated cut means the master was not solved to optimality.
    if (duplicate) break;
    st.pool.push_back(std::move(*sub.cut));
  }

  res.objective = upper;
  res.lower_bound = lower;
  res.iterations = st.iteration;
  res.wall_time = watch.elapsed();
  finalize(res);
  return out;
}

// iteration,LB,UB,cuts,time
inline std::string iteration_log_csv(const BendersState& st) {
  std::string out = "iteration,LB,UB,cuts,time\n";
  char line[160];
  for (const auto& it : st.trajectory) {
    std::snprintf(line, sizeof line, "%zu,%.6f,%.6f,%zu,%.6f\n", it.iteration, it.lower_bound,
                  it.upper_bound, it.cuts, it.time);
    out += line;
  }
  return out;
}

}  // namespace ringstar
