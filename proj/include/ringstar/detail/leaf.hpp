#pragma once

// Shared machinery of the exact and heuristic solvers: a Goal bundles the
// objective being minimised (one of the three variants, or the Benders
// master objective), and solve_leaf finds the best completion of a fixed hub
// set (ring order plus assignment).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ringstar/cut.hpp"
#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"
#include "ringstar/result.hpp"

namespace ringstar::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class GoalKind { Rsp, Rrsp, Srsp, Master };

class Goal {
 public:
  Goal(const Instance& inst, Problem problem) : inst_(&inst) {
    switch (problem) {
      case Problem::Rsp:
        kind_ = GoalKind::Rsp;
        break;
      case Problem::Rrsp:
        kind_ = GoalKind::Rrsp;
        break;
      case Problem::Srsp:
        kind_ = GoalKind::Srsp;
        break;
    }
  }

  // Benders master: construction cost plus the smallest eta allowed by the
  // cut pool.
  Goal(const Instance& inst, std::span<const BendersCut> cuts)
      : inst_(&inst), kind_(GoalKind::Master), cuts_(cuts) {}

  const Instance& instance() const { return *inst_; }
  GoalKind kind() const { return kind_; }
  std::span<const BendersCut> cuts() const { return cuts_; }

  // True when the assignment interacts with the ring through a max term.
  bool coupled() const {
    if (inst_->failure_budget <= 0.0) return false;
    return kind_ == GoalKind::Rrsp || (kind_ == GoalKind::Master && !cuts_.empty());
  }

  double value(const Solution& sol) const {
    switch (kind_) {
      case GoalKind::Rsp:
        return ringstar::detail::rsp_cost(*inst_, sol);
      case GoalKind::Rrsp:
        return rrsp_value(*inst_, sol);
      case GoalKind::Srsp:
        return srsp_value(*inst_, sol);
      case GoalKind::Master:
        return ringstar::detail::rsp_cost(*inst_, sol) + pooled_eta(*inst_, cuts_, sol);
    }
    return kInf;
  }

 private:
  const Instance* inst_;
  GoalKind kind_ = GoalKind::Rsp;
  std::span<const BendersCut> cuts_;
};

// Precomputed data for one hub set.
struct HubSet {
  std::vector<NodeId> hubs;  // ascending, includes the depot
  std::vector<char> is_hub;
  std::vector<NodeId> terminals;
  double open_total = 0.0;
  // Per terminal (parallel to `terminals`).
  std::vector<std::vector<NodeId>> by_arc_cost;  // hubs, cheapest arc first
  std::vector<double> min_arc;
  double star_floor = 0.0;  // sum of min_arc
  // Survivable variant: cheapest arc plus pre-built backup arc, per terminal.
  std::vector<NodeId> srsp_choice;
  double srsp_star = 0.0;
  // Cheapest and second cheapest backup arc rate / arc cost per terminal,
  // used to price reconnection away from a failed hub.
  std::vector<std::pair<NodeId, double>> rate1, cost1;
  std::vector<double> rate2, cost2;

  double reconnect_rate(std::size_t ti, NodeId failed) const {
    return rate1[ti].first == failed ? rate2[ti] : rate1[ti].second;
  }
  double reconnect_cost(std::size_t ti, NodeId failed) const {
    return cost1[ti].first == failed ? cost2[ti] : cost1[ti].second;
  }
};

inline void two_smallest(const CostMatrix& m, NodeId t, const std::vector<NodeId>& hubs,
                         std::pair<NodeId, double>& first, double& second) {
  first = {kNoHub, kInf};
  second = kInf;
  for (NodeId h : hubs) {
    double c = m(t, h);
    if (c < first.second) {
      second = first.second;
      first = {h, c};
    } else if (c < second) {
      second = c;
    }
  }
}

inline HubSet make_hub_set(const Instance& inst, std::vector<NodeId> hubs) {
  HubSet hs;
  std::sort(hubs.begin(), hubs.end());
  hs.hubs = std::move(hubs);
  hs.is_hub.assign(inst.n, 0);
  for (NodeId h : hs.hubs) {
    hs.is_hub[h] = 1;
    hs.open_total += inst.open_cost[h];
  }
  for (NodeId v = 0; v < inst.n; ++v)
    if (!hs.is_hub[v]) hs.terminals.push_back(v);

  const std::size_t m = hs.terminals.size();
  hs.by_arc_cost.resize(m);
  hs.min_arc.resize(m);
  hs.srsp_choice.resize(m);
  hs.rate1.resize(m);
  hs.rate2.resize(m);
  hs.cost1.resize(m);
  hs.cost2.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId t = hs.terminals[i];
    auto& order = hs.by_arc_cost[i];
    order = hs.hubs;
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return inst.arc_cost(t, a) < inst.arc_cost(t, b);
    });
    hs.min_arc[i] = inst.arc_cost(t, order.front());
    hs.star_floor += hs.min_arc[i];
    two_smallest(inst.backup_arc_rate, t, hs.hubs, hs.rate1[i], hs.rate2[i]);
    two_smallest(inst.arc_cost, t, hs.hubs, hs.cost1[i], hs.cost2[i]);

    double best = kInf;
    for (NodeId h : hs.hubs) {
      double c = inst.arc_cost(t, h) + (inst.is_certain(h) ? 0.0 : hs.reconnect_cost(i, h));
      if (c < best) {
        best = c;
        hs.srsp_choice[i] = h;
      }
    }
    hs.srsp_star += best;
  }
  return hs;
}

// Lower bound on any completion's objective that ignores the ring.
inline double completion_floor(const Goal& goal, const HubSet& hs) {
  return hs.open_total + (goal.kind() == GoalKind::Srsp ? hs.srsp_star : hs.star_floor);
}

// Counts work and polls the deadline every few thousand steps.
class WorkBudget {
 public:
  WorkBudget(const Deadline& deadline, std::size_t max_steps = std::numeric_limits<std::size_t>::max())
      : deadline_(&deadline), max_steps_(max_steps) {}

  bool exhausted() {
    if (stopped_) return true;
    if (++steps_ >= max_steps_) stopped_ = true;
    else if ((steps_ & 0xfff) == 0 && deadline_->expired()) stopped_ = true;
    return stopped_;
  }
  bool stopped() const { return stopped_; }

 private:
  const Deadline* deadline_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  bool stopped_ = false;
};

// Worst repair rate of the resilient variant, tracked incrementally.
class RepairPenalty {
 public:
  RepairPenalty(const Instance& inst, const HubSet& hs, const std::vector<NodeId>& ring)
      : inst_(&inst), hs_(&hs), load_(inst.n, 0.0) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (inst.is_certain(ring[i])) continue;
      auto [u, w] = ring_neighbors(ring, i);
      load_[ring[i]] = inst.backup_edge_rate(u, w);
      uncertain_.push_back(ring[i]);
    }
  }

  void add(std::size_t ti, NodeId h) {
    if (!inst_->is_certain(h)) load_[h] += hs_->reconnect_rate(ti, h);
  }
  void remove(std::size_t ti, NodeId h) {
    if (!inst_->is_certain(h)) load_[h] -= hs_->reconnect_rate(ti, h);
  }
  double current() const {
    double worst = 0.0;
    for (NodeId h : uncertain_) worst = std::max(worst, load_[h]);
    return inst_->failure_budget * worst;
  }

 private:
  const Instance* inst_;
  const HubSet* hs_;
  std::vector<double> load_;
  std::vector<NodeId> uncertain_;
};

// eta of the Benders master: the largest F * rho among cuts whose hub keeps
// its neighbours in this ring, whose blockers are absent, and whose terminal
// set is fully assigned to the hub.
class CutPenalty {
 public:
  CutPenalty(const Instance& inst, const HubSet& hs, std::span<const BendersCut> cuts,
             const std::vector<NodeId>& ring)
      : F_(inst.failure_budget), watchers_(hs.terminals.size() * inst.n) {
    auto pos = ring_positions(inst.n, ring);
    std::vector<int> term_index(inst.n, -1);
    for (std::size_t i = 0; i < hs.terminals.size(); ++i) term_index[hs.terminals[i]] = static_cast<int>(i);
    n_ = inst.n;
    for (const auto& cut : cuts) {
      if (!hs.is_hub[cut.hub]) continue;
      if (!ring_has_edge(pos, ring.size(), cut.neighbors.first, cut.hub) ||
          !ring_has_edge(pos, ring.size(), cut.hub, cut.neighbors.second))
        continue;
      if (std::any_of(cut.blockers.begin(), cut.blockers.end(), [&](NodeId b) { return hs.is_hub[b]; }))
        continue;
      if (std::any_of(cut.terminals.begin(), cut.terminals.end(),
                      [&](NodeId t) { return term_index[t] < 0; }))
        continue;
      const std::size_t id = need_.size();
      need_.push_back(cut.terminals.size());
      have_.push_back(0);
      value_.push_back(F_ * cut.rate);
      for (NodeId t : cut.terminals) watchers_[term_index[t] * n_ + cut.hub].push_back(id);
    }
  }

  void add(std::size_t ti, NodeId h) {
    for (std::size_t id : watchers_[ti * n_ + h]) ++have_[id];
  }
  void remove(std::size_t ti, NodeId h) {
    for (std::size_t id : watchers_[ti * n_ + h]) --have_[id];
  }
  double current() const {
    double eta = 0.0;
    for (std::size_t id = 0; id < need_.size(); ++id)
      if (have_[id] == need_[id]) eta = std::max(eta, value_[id]);
    return eta;
  }

 private:
  double F_;
  std::size_t n_ = 0;
  std::vector<std::size_t> need_, have_;
  std::vector<double> value_;
  std::vector<std::vector<std::size_t>> watchers_;
};

// Exact min of (star cost + penalty) over assignments of hs.terminals to
// hub-set members, restricted to values below `cutoff`. Writes the best
// assignment into `assignment` and returns its value, or kInf when nothing
// beats the cutoff. Stops early when the budget runs out.
template <class Penalty>
double best_assignment(const Instance& inst, const HubSet& hs, Penalty& penalty, double cutoff,
                       std::vector<NodeId>& assignment, WorkBudget& budget) {
  const std::size_t m = hs.terminals.size();
  // Branch first on terminals whose two cheapest hubs differ most.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto regret = [&](std::size_t i) {
    const auto& o = hs.by_arc_cost[i];
    if (o.size() < 2) return 0.0;
    return inst.arc_cost(hs.terminals[i], o[1]) - inst.arc_cost(hs.terminals[i], o[0]);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return regret(a) > regret(b); });
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) suffix[k] = suffix[k + 1] + hs.min_arc[order[k]];

  double best = cutoff;
  bool found = false;
  std::vector<NodeId> current(m, kNoHub);

  std::function<void(std::size_t, double)> descend = [&](std::size_t depth, double cost) {
    if (budget.exhausted()) return;
    if (depth == m) {
      double v = cost + penalty.current();
      if (v < best) {
        best = v;
        found = true;
        for (std::size_t k = 0; k < m; ++k) assignment[hs.terminals[order[k]]] = current[k];
      }
      return;
    }
    const std::size_t ti = order[depth];
    const NodeId t = hs.terminals[ti];
    for (NodeId h : hs.by_arc_cost[ti]) {
      double c = cost + inst.arc_cost(t, h);
      penalty.add(ti, h);
      if (c + suffix[depth + 1] + penalty.current() < best - 1e-12) {
        current[depth] = h;
        descend(depth + 1, c);
      }
      penalty.remove(ti, h);
      if (budget.stopped()) return;
    }
  };
  descend(0, 0.0);
  return found ? best : kInf;
}

// Everything solve_leaf learned about one hub set.
struct LeafResult {
  bool found = false;  // a completion strictly better than the cutoff exists
  double value = kInf;
  Solution solution;
  bool exact = true;  // the whole completion space was covered
  double bound = kInf;  // valid lower bound on every completion (meaningful when !exact)
};

// Best value of the completion of one ring for the goal, below `cutoff`.
// Writes the assignment into `sol` (whose hubs are `ring`).
inline double complete_ring(const Goal& goal, const HubSet& hs, const std::vector<NodeId>& ring,
                            double ring_cost, double cutoff, Solution& sol, WorkBudget& budget) {
  const Instance& inst = goal.instance();
  const double base = hs.open_total + ring_cost;
  std::fill(sol.assignment.begin(), sol.assignment.end(), kNoHub);
  switch (goal.kind()) {
    case GoalKind::Srsp: {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (std::size_t i = 0; i < ring.size(); ++i)
        if (!inst.is_certain(ring[i])) edges.push_back(ring_neighbors(ring, i));
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      double backup = 0.0;
      for (auto [u, w] : edges) backup += inst.ring_cost(u, w);
      for (std::size_t i = 0; i < hs.terminals.size(); ++i) sol.assignment[hs.terminals[i]] = hs.srsp_choice[i];
      return base + hs.srsp_star + backup;
    }
    case GoalKind::Rsp:
    case GoalKind::Rrsp:
    case GoalKind::Master:
      break;
  }
  if (!goal.coupled()) {
    for (std::size_t i = 0; i < hs.terminals.size(); ++i)
      sol.assignment[hs.terminals[i]] = hs.by_arc_cost[i].front();
    return base + hs.star_floor;
  }
  if (goal.kind() == GoalKind::Rrsp) {
    RepairPenalty pen(inst, hs, ring);
    if (base + hs.star_floor + pen.current() >= cutoff) return kInf;
    double v = best_assignment(inst, hs, pen, cutoff - base, sol.assignment, budget);
    return v == kInf ? kInf : base + v;
  }
  CutPenalty pen(inst, hs, goal.cuts(), ring);
  if (base + hs.star_floor + pen.current() >= cutoff) return kInf;
  double v = best_assignment(inst, hs, pen, cutoff - base, sol.assignment, budget);
  return v == kInf ? kInf : base + v;
}

inline double ring_length(const Instance& inst, const std::vector<NodeId>& ring) {
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) total += inst.ring_cost(ring[i], ring[(i + 1) % ring.size()]);
  return total;
}

// Half the sum of each hub's two cheapest ring edges inside the set.
inline double ring_lower_bound(const Instance& inst, const std::vector<NodeId>& hubs) {
  double total = 0.0;
  for (NodeId v : hubs) {
    double a = kInf, b = kInf;
    for (NodeId u : hubs) {
      if (u == v) continue;
      double c = inst.ring_cost(u, v);
      if (c < a) {
        b = a;
        a = c;
      } else if (c < b) {
        b = c;
      }
    }
    total += 0.5 * (a + b);
  }
  return total;
}

// Nearest-neighbour tour from the first hub, improved by 2-opt on ring cost.
inline std::vector<NodeId> heuristic_ring(const Instance& inst, const std::vector<NodeId>& hubs,
                                          NodeId depot) {
  std::vector<NodeId> ring{depot};
  std::vector<char> used(inst.n, 0);
  used[depot] = 1;
  while (ring.size() < hubs.size()) {
    NodeId last = ring.back(), next = kNoHub;
    for (NodeId v : hubs)
      if (!used[v] && (next == kNoHub || inst.ring_cost(last, v) < inst.ring_cost(last, next))) next = v;
    used[next] = 1;
    ring.push_back(next);
  }
  bool improved = true;
  const std::size_t k = ring.size();
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        NodeId a = ring[i - 1], b = ring[i], c = ring[j], d = ring[(j + 1) % k];
        double delta = inst.ring_cost(a, c) + inst.ring_cost(b, d) - inst.ring_cost(a, b) - inst.ring_cost(c, d);
        if (delta < -1e-9) {
          std::reverse(ring.begin() + i, ring.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  return ring;
}

// Best completion (ring order + assignment) of a fixed hub set, looking only
// for values strictly below `cutoff`. A heuristic ring seeds the incumbent,
// then ring orders are enumerated with pruning. Beyond `exact_ring_limit`
// hubs the enumeration gets a step budget; if it runs out the leaf is
// reported as not exact and keeps a lower bound.
inline LeafResult solve_leaf(const Goal& goal, std::vector<NodeId> hub_list, double cutoff,
                             const Deadline& deadline, int exact_ring_limit) {
  const Instance& inst = goal.instance();
  LeafResult result;
  HubSet hs = make_hub_set(inst, std::move(hub_list));
  const double floor = completion_floor(goal, hs);
  const std::size_t k = hs.hubs.size();
  Solution sol;
  sol.assignment.assign(inst.n, kNoHub);

  double best = cutoff;
  auto consider = [&](const std::vector<NodeId>& ring, double length, WorkBudget& budget) {
    sol.hubs = ring;
    double v = complete_ring(goal, hs, ring, length, best, sol, budget);
    if (v < best) {
      best = v;
      result.found = true;
      result.value = v;
      result.solution = sol;
    }
  };

  const bool capped = static_cast<int>(k) > exact_ring_limit;
  constexpr std::size_t kCappedSteps = 2000000;
  if (k > 3) {
    WorkBudget seed_budget(deadline, capped ? kCappedSteps : std::numeric_limits<std::size_t>::max());
    auto ring = heuristic_ring(inst, hs.hubs, inst.depot);
    consider(ring, ring_length(inst, ring), seed_budget);
    if (seed_budget.stopped()) {
      // Even one assignment search did not finish; the leaf stays open.
      result.exact = false;
      result.bound = floor + ring_lower_bound(inst, hs.hubs);
      if (result.found) result.value = goal.value(result.solution);
      return result;
    }
  }

  // Cheapest edge entering each hub from inside the set.
  std::vector<double> min_in(inst.n, kInf);
  for (NodeId v : hs.hubs)
    for (NodeId u : hs.hubs)
      if (u != v) min_in[v] = std::min(min_in[v], inst.ring_cost(u, v));

  WorkBudget budget(deadline, capped ? kCappedSteps : std::numeric_limits<std::size_t>::max());
  std::vector<NodeId> path{inst.depot};
  std::vector<char> used(inst.n, 0);
  used[inst.depot] = 1;
  double remaining = 0.0;
  for (NodeId v : hs.hubs) remaining += min_in[v];  // includes the closing edge into the depot

  std::function<void(double)> extend = [&](double length) {
    if (budget.exhausted()) return;
    if (path.size() == k) {
      if (path[1] > path.back()) return;  // reflection already visited
      consider(path, length + inst.ring_cost(path.back(), inst.depot), budget);
      return;
    }
    for (NodeId v : hs.hubs) {
      if (used[v]) continue;
      double len = length + inst.ring_cost(path.back(), v);
      remaining -= min_in[v];
      if (len + remaining + floor < best - 1e-12) {
        used[v] = 1;
        path.push_back(v);
        extend(len);
        path.pop_back();
        used[v] = 0;
      }
      remaining += min_in[v];
      if (budget.stopped()) return;
    }
  };
  extend(0.0);

  if (budget.stopped()) {
    result.exact = false;
    result.bound = floor + ring_lower_bound(inst, hs.hubs);
  } else {
    result.bound = result.found ? result.value : cutoff;
  }
  if (result.found) result.value = goal.value(result.solution);
  return result;
}

}  // namespace ringstar::detail
