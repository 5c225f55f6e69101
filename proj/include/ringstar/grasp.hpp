#pragma once

// GRASP heuristic: randomized greedy ring construction followed by
// first-improvement local search under add / drop / swap / 2-opt /
// reassign moves, evaluated with the true objective.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ringstar/bound.hpp"
#include "ringstar/detail/leaf.hpp"
#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"
#include "ringstar/result.hpp"

namespace ringstar {

inline constexpr double kRclAlpha = 0.3;

namespace detail {

// Assignment rule used whenever the ring changes: cheapest arc, or for the
// survivable variant cheapest arc plus pre-built backup arc.
inline void assign_greedy(const Goal& goal, Solution& sol) {
  const Instance& inst = goal.instance();
  std::vector<char> is_hub(inst.n, 0);
  for (NodeId h : sol.hubs) is_hub[h] = 1;
  std::vector<NodeId> sorted = sol.hubs;
  std::sort(sorted.begin(), sorted.end());
  for (NodeId t = 0; t < inst.n; ++t) {
    if (is_hub[t]) {
      sol.assignment[t] = kNoHub;
      continue;
    }
    NodeId best = kNoHub;
    double best_cost = kInf;
    if (goal.kind() == GoalKind::Srsp) {
      std::pair<NodeId, double> first;
      double second;
      two_smallest(inst.arc_cost, t, sorted, first, second);
      for (NodeId h : sorted) {
        double backup = inst.is_certain(h) ? 0.0 : (first.first == h ? second : first.second);
        double c = inst.arc_cost(t, h) + backup;
        if (c < best_cost) {
          best_cost = c;
          best = h;
        }
      }
    } else {
      for (NodeId h : sorted) {
        if (inst.arc_cost(t, h) < best_cost) {
          best_cost = inst.arc_cost(t, h);
          best = h;
        }
      }
    }
    sol.assignment[t] = best;
  }
}

class LocalSearch {
 public:
  LocalSearch(const Goal& goal, const Deadline& deadline) : goal_(goal), deadline_(deadline) {}

  // Runs moves until none improves. Returns the final value.
  double run(Solution& sol) {
    double value = goal_.value(sol);
    bool improved = true;
    while (improved && !deadline_.expired()) {
      improved = two_opt(sol, value) || (goal_.coupled() && reassign(sol, value)) ||
                 drop(sol, value) || add(sol, value) || swap(sol, value);
    }
    return value;
  }

 private:
  bool accept(Solution& sol, Solution& candidate, double& value, bool reassign_all = true) {
    if (reassign_all) assign_greedy(goal_, candidate);
    double v = goal_.value(candidate);
    if (v < value - 1e-9) {
      value = v;
      sol = std::move(candidate);
      return true;
    }
    return false;
  }

  bool two_opt(Solution& sol, double& value) {
    const std::size_t k = sol.hubs.size();
    for (std::size_t i = 1; i + 1 < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        Solution c = sol;
        std::reverse(c.hubs.begin() + i, c.hubs.begin() + j + 1);
        // Ring reversal alone keeps the assignment valid.
        if (accept(sol, c, value, false)) return true;
      }
    }
    return false;
  }

  bool reassign(Solution& sol, double& value) {
    const Instance& inst = goal_.instance();
    for (NodeId t = 0; t < inst.n; ++t) {
      if (sol.assignment[t] == kNoHub) continue;
      for (NodeId h : sol.hubs) {
        if (h == sol.assignment[t]) continue;
        Solution c = sol;
        c.assignment[t] = h;
        if (accept(sol, c, value, false)) return true;
      }
    }
    return false;
  }

  bool drop(Solution& sol, double& value) {
    if (sol.hubs.size() <= 3) return false;
    for (std::size_t i = 0; i < sol.hubs.size(); ++i) {
      if (sol.hubs[i] == goal_.instance().depot) continue;
      Solution c = sol;
      c.hubs.erase(c.hubs.begin() + i);
      if (accept(sol, c, value)) return true;
    }
    return false;
  }

  bool add(Solution& sol, double& value) {
    const Instance& inst = goal_.instance();
    for (NodeId v = 0; v < inst.n; ++v) {
      if (sol.assignment[v] == kNoHub) continue;
      Solution c = sol;
      c.hubs.insert(c.hubs.begin() + cheapest_insertion(inst, sol.hubs, v), v);
      if (accept(sol, c, value)) return true;
    }
    return false;
  }

  bool swap(Solution& sol, double& value) {
    const Instance& inst = goal_.instance();
    for (std::size_t i = 0; i < sol.hubs.size(); ++i) {
      if (sol.hubs[i] == inst.depot) continue;
      for (NodeId v = 0; v < inst.n; ++v) {
        if (sol.assignment[v] == kNoHub) continue;
        Solution c = sol;
        c.hubs[i] = v;
        c.assignment[v] = kNoHub;
        if (accept(sol, c, value)) return true;
      }
    }
    return false;
  }

 public:
  // Index at which inserting v into the ring adds the least ring cost.
  static std::size_t cheapest_insertion(const Instance& inst, const std::vector<NodeId>& ring,
                                        NodeId v) {
    const std::size_t k = ring.size();
    if (k < 2) return k;
    std::size_t best = 1;
    double best_delta = kInf;
    for (std::size_t i = 0; i < k; ++i) {
      NodeId a = ring[i], b = ring[(i + 1) % k];
      double delta = inst.ring_cost(a, v) + inst.ring_cost(v, b) - inst.ring_cost(a, b);
      if (delta < best_delta) {
        best_delta = delta;
        best = i + 1;
      }
    }
    return best;
  }

 private:
  const Goal& goal_;
  const Deadline& deadline_;
};

// Randomized greedy construction on construction cost. Nodes join the ring
// while some candidate lowers opening + ring + nearest-hub star cost (the
// ring is always grown to three hubs); each pick is uniform over the
// restricted candidate list.
inline Solution construct(const Goal& goal, std::mt19937_64& rng) {
  const Instance& inst = goal.instance();
  const int n = inst.n;
  std::vector<NodeId> ring{inst.depot};
  std::vector<char> is_hub(n, 0);
  is_hub[inst.depot] = 1;
  std::vector<double> nearest(n);
  for (NodeId t = 0; t < n; ++t) nearest[t] = inst.arc_cost(t, inst.depot);

  while (static_cast<int>(ring.size()) < n) {
    std::vector<std::pair<double, NodeId>> scored;
    for (NodeId v = 0; v < n; ++v) {
      if (is_hub[v]) continue;
      double ring_delta;
      if (ring.size() == 1) {
        ring_delta = 2.0 * inst.ring_cost(ring[0], v);
      } else {
        std::size_t at = LocalSearch::cheapest_insertion(inst, ring, v);
        NodeId a = ring[at - 1], b = ring[at % ring.size()];
        ring_delta = inst.ring_cost(a, v) + inst.ring_cost(v, b) - inst.ring_cost(a, b);
      }
      double delta = inst.open_cost[v] + ring_delta - nearest[v];
      for (NodeId t = 0; t < n; ++t)
        if (!is_hub[t] && t != v) delta += std::min(0.0, inst.arc_cost(t, v) - nearest[t]);
      scored.emplace_back(delta, v);
    }
    if (ring.size() >= 3) {
      std::erase_if(scored, [](const auto& s) { return s.first >= -1e-9; });
      if (scored.empty()) break;
    }
    double lo = kInf, hi = -kInf;
    for (auto [d, v] : scored) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const double threshold = lo + kRclAlpha * (hi - lo);
    std::vector<NodeId> rcl;
    for (auto [d, v] : scored)
      if (d <= threshold + 1e-12) rcl.push_back(v);
    NodeId pick = rcl[std::uniform_int_distribution<std::size_t>(0, rcl.size() - 1)(rng)];

    if (ring.size() == 1) ring.push_back(pick);
    else ring.insert(ring.begin() + LocalSearch::cheapest_insertion(inst, ring, pick), pick);
    is_hub[pick] = 1;
    for (NodeId t = 0; t < n; ++t) nearest[t] = std::min(nearest[t], inst.arc_cost(t, pick));
  }

  Solution sol;
  sol.hubs = std::move(ring);
  sol.assignment.assign(n, kNoHub);
  assign_greedy(goal, sol);
  return sol;
}

struct HeuristicOutcome {
  Solution solution;
  double value = kInf;
  std::size_t iterations = 0;
};

// At least one iteration runs even when the deadline has already passed.
inline HeuristicOutcome run_grasp(const Goal& goal, int iterations, std::uint64_t seed,
                                  const Deadline& deadline) {
  std::mt19937_64 rng(seed);
  HeuristicOutcome best;
  for (int it = 0; it < iterations; ++it) {
    if (it > 0 && deadline.expired()) break;
    Solution sol = construct(goal, rng);
    LocalSearch ls(goal, deadline);
    double v = ls.run(sol);
    ++best.iterations;
    if (v < best.value) {
      best.value = v;
      best.solution = std::move(sol);
    }
  }
  return best;
}

}  // namespace detail

// Heuristic solve. The reported lower bound is the root bound of the
// branch-and-bound, so the optimality flag is only raised when the heuristic
// value meets it.
inline SolverResult grasp(const Instance& inst, Problem problem, int iterations, std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("grasp needs at least one iteration");
  Stopwatch watch;
  detail::Goal goal(inst, problem);
  auto outcome = detail::run_grasp(goal, iterations, seed, Deadline());
  SolverResult r;
  r.solution = std::move(outcome.solution);
  r.objective = outcome.value;
  r.iterations = outcome.iterations;
  r.lower_bound = std::min(r.objective, detail::partial_bound(inst, root_node(inst)));
  r.wall_time = watch.elapsed();
  finalize(r);
  r.trace.push_back({r.lower_bound, r.objective});
  return r;
}

}  // namespace ringstar
