#pragma once

// Objective functions of the three ring-star variants and the failure
// machinery behind them.
//
// When an uncertain hub h fails, its two ring neighbours are joined by a
// backup edge and every terminal it served is reconnected to the surviving
// hub with the cheapest backup rate. The per-time cost of those operations is
// the repair rate of h. The resilient objective adds F times the worst repair
// rate; the survivable objective pre-builds every backup element once, at
// construction prices, and is therefore independent of F.

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ringstar/model.hpp"

namespace ringstar {

struct EvaluationReport {
  double rsp_cost = 0.0;
  std::map<NodeId, double> repair_rate;  // uncertain ring hubs only
  std::optional<NodeId> worst_hub;
  double rrsp_objective = 0.0;
  double srsp_backup_cost = 0.0;
  double srsp_objective = 0.0;
};

struct BackupPlan {
  std::set<std::pair<NodeId, NodeId>> backup_edges;  // (u, w) with u < w
  std::set<std::pair<NodeId, NodeId>> backup_arcs;   // (terminal, hub)

  bool empty() const { return backup_edges.empty() && backup_arcs.empty(); }
};

struct FailureTopology {
  NodeId failed_hub = kNoHub;
  std::vector<NodeId> ring;               // surviving cycle, original order
  std::pair<NodeId, NodeId> backup_edge;  // inserted between the neighbours
  std::map<NodeId, NodeId> reassigned;    // orphaned terminal -> new hub
  double repair_rate = 0.0;

  // The post-failure network as a Solution; the failed hub is left
  // unassigned.
  Solution as_solution(const Solution& original) const {
    Solution s;
    s.hubs = ring;
    s.assignment = original.assignment;
    for (auto [t, h] : reassigned) s.assignment[t] = h;
    return s;
  }
};

namespace detail {

// Unchecked cores. Callers guarantee feasibility.

inline double rsp_cost(const Instance& inst, const Solution& sol) {
  double total = 0.0;
  const std::size_t k = sol.hubs.size();
  for (std::size_t i = 0; i < k; ++i) {
    total += inst.open_cost[sol.hubs[i]];
    total += inst.ring_cost(sol.hubs[i], sol.hubs[(i + 1) % k]);
  }
  for (NodeId t = 0; t < inst.n; ++t)
    if (sol.assignment[t] != kNoHub) total += inst.arc_cost(t, sol.assignment[t]);
  return total;
}

// Cheapest surviving hub for t when `failed` is down, under `costs`.
// Lowest index among equally cheap hubs.
inline std::pair<NodeId, double> cheapest_other_hub(const CostMatrix& costs,
                                                    const std::vector<NodeId>& hubs, NodeId t,
                                                    NodeId failed) {
  NodeId best = kNoHub;
  double best_cost = std::numeric_limits<double>::infinity();
  for (NodeId h : hubs) {
    if (h == failed || h == t) continue;
    double c = costs(t, h);
    if (c < best_cost || (c == best_cost && h < best)) {
      best_cost = c;
      best = h;
    }
  }
  return {best, best_cost};
}

// Repair rate of the hub at ring position i.
inline double repair_rate_at(const Instance& inst, const Solution& sol, std::size_t i) {
  const NodeId h = sol.hubs[i];
  auto [u, w] = ring_neighbors(sol.hubs, i);
  double rate = inst.backup_edge_rate(u, w);
  for (NodeId t = 0; t < inst.n; ++t)
    if (sol.assignment[t] == h)
      rate += cheapest_other_hub(inst.backup_arc_rate, sol.hubs, t, h).second;
  return rate;
}

// Largest repair rate over uncertain ring hubs and the lowest-index hub
// attaining it (within tolerance). Zero and nullopt without uncertain hubs.
inline std::pair<double, std::optional<NodeId>> worst_repair(const Instance& inst,
                                                             const Solution& sol) {
  std::vector<double> load(inst.n, -1.0);
  for (std::size_t i = 0; i < sol.hubs.size(); ++i) {
    if (inst.is_certain(sol.hubs[i])) continue;
    auto [u, w] = ring_neighbors(sol.hubs, i);
    load[sol.hubs[i]] = inst.backup_edge_rate(u, w);
  }
  for (NodeId t = 0; t < inst.n; ++t) {
    NodeId h = sol.assignment[t];
    if (h != kNoHub && load[h] >= 0.0)
      load[h] += cheapest_other_hub(inst.backup_arc_rate, sol.hubs, t, h).second;
  }
  double worst = 0.0;
  for (double r : load) worst = std::max(worst, r);
  std::optional<NodeId> hub;
  for (NodeId h = 0; h < inst.n && !hub; ++h)
    if (load[h] >= 0.0 && load[h] >= worst - kTolerance) hub = h;
  return {worst, hub};
}

inline BackupPlan srsp_plan(const Instance& inst, const Solution& sol) {
  BackupPlan plan;
  for (std::size_t i = 0; i < sol.hubs.size(); ++i) {
    const NodeId h = sol.hubs[i];
    if (inst.is_certain(h)) continue;
    plan.backup_edges.insert(ring_neighbors(sol.hubs, i));
    for (NodeId t = 0; t < inst.n; ++t)
      if (sol.assignment[t] == h)
        plan.backup_arcs.emplace(t, cheapest_other_hub(inst.arc_cost, sol.hubs, t, h).first);
  }
  return plan;
}

inline double plan_cost(const Instance& inst, const BackupPlan& plan) {
  double total = 0.0;
  for (auto [u, w] : plan.backup_edges) total += inst.ring_cost(u, w);
  for (auto [t, h] : plan.backup_arcs) total += inst.arc_cost(t, h);
  return total;
}

inline double rrsp_value(const Instance& inst, const Solution& sol) {
  return rsp_cost(inst, sol) + inst.failure_budget * worst_repair(inst, sol).first;
}

inline double srsp_value(const Instance& inst, const Solution& sol) {
  return rsp_cost(inst, sol) + plan_cost(inst, srsp_plan(inst, sol));
}

inline double objective(const Instance& inst, const Solution& sol, Problem p) {
  switch (p) {
    case Problem::Rsp:
      return rsp_cost(inst, sol);
    case Problem::Rrsp:
      return rrsp_value(inst, sol);
    case Problem::Srsp:
      return srsp_value(inst, sol);
  }
  return 0.0;
}

inline std::size_t require_uncertain_hub(const Instance& inst, const Solution& sol, NodeId h) {
  if (h < 0 || h >= inst.n) throw std::invalid_argument("node out of range");
  if (inst.is_certain(h))
    throw std::invalid_argument("node " + std::to_string(h) + " is certain and cannot fail");
  for (std::size_t i = 0; i < sol.hubs.size(); ++i)
    if (sol.hubs[i] == h) return i;
  throw std::invalid_argument("node " + std::to_string(h) + " is not a hub");
}

}  // namespace detail

// Opening + ring + star cost.
inline double rsp_cost(const Instance& inst, const Solution& sol) {
  require_feasible(inst, sol);
  return detail::rsp_cost(inst, sol);
}

// Per-time cost of repairing the failure of uncertain hub h.
inline double repair_rate(const Instance& inst, const Solution& sol, NodeId h) {
  require_feasible(inst, sol);
  return detail::repair_rate_at(inst, sol, detail::require_uncertain_hub(inst, sol, h));
}

inline BackupPlan srsp_plan(const Instance& inst, const Solution& sol) {
  require_feasible(inst, sol);
  return detail::srsp_plan(inst, sol);
}

inline double srsp_objective(const Instance& inst, const Solution& sol) {
  require_feasible(inst, sol);
  return detail::srsp_value(inst, sol);
}

// Full report: construction cost, repair rates, and both variant objectives.
inline EvaluationReport rrsp_objective(const Instance& inst, const Solution& sol) {
  require_feasible(inst, sol);
  EvaluationReport r;
  r.rsp_cost = detail::rsp_cost(inst, sol);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.hubs.size(); ++i) {
    if (inst.is_certain(sol.hubs[i])) continue;
    double rate = detail::repair_rate_at(inst, sol, i);
    r.repair_rate[sol.hubs[i]] = rate;
    worst = std::max(worst, rate);
  }
  for (auto [h, rate] : r.repair_rate) {
    if (rate >= worst - kTolerance) {
      r.worst_hub = h;
      break;
    }
  }
  r.rrsp_objective = r.rsp_cost + inst.failure_budget * worst;
  r.srsp_backup_cost = detail::plan_cost(inst, detail::srsp_plan(inst, sol));
  r.srsp_objective = r.rsp_cost + r.srsp_backup_cost;
  return r;
}

inline EvaluationReport evaluate(const Instance& inst, const Solution& sol) {
  return rrsp_objective(inst, sol);
}

inline double objective(const Instance& inst, const Solution& sol, Problem p) {
  require_feasible(inst, sol);
  return detail::objective(inst, sol, p);
}

// The network left after hub h fails and is repaired.
inline FailureTopology materialize_failure(const Instance& inst, const Solution& sol, NodeId h) {
  require_feasible(inst, sol);
  const std::size_t i = detail::require_uncertain_hub(inst, sol, h);
  FailureTopology topo;
  topo.failed_hub = h;
  topo.backup_edge = ring_neighbors(sol.hubs, i);
  for (NodeId v : sol.hubs)
    if (v != h) topo.ring.push_back(v);
  for (NodeId t = 0; t < inst.n; ++t)
    if (sol.assignment[t] == h)
      topo.reassigned[t] = detail::cheapest_other_hub(inst.backup_arc_rate, sol.hubs, t, h).first;
  topo.repair_rate = detail::repair_rate_at(inst, sol, i);
  return topo;
}

}  // namespace ringstar
