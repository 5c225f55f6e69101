#pragma once

// Shared instances, random solutions, relabeling and naive recomputations
// used across the test binaries.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "ringstar/ringstar.hpp"

namespace ringstar::testing {

// Four nodes, depot 0 the only certain node, every ring edge 10, every arc
// 4, every backup rate 1.
inline Instance k4u(double F = 0.0) {
  Instance inst = make_instance(4, 0);
  for (NodeId i = 0; i < 4; ++i) {
    for (NodeId j = 0; j < 4; ++j) {
      if (i == j) continue;
      inst.ring_cost(i, j) = 10;
      inst.arc_cost(i, j) = 4;
      inst.backup_edge_rate(i, j) = 1;
      inst.backup_arc_rate(i, j) = 1;
    }
  }
  inst.failure_budget = F;
  return inst;
}

// The nine-node drawing: nodes are labelled 1..9 there and stored as 0..8
// here. Depot 1; nodes 1 and 9 certain.
inline NodeId L(int label) { return label - 1; }

inline Instance fig2(double F = 10.0) {
  const double xy[9][2] = {{6.5, 7.5}, {3, 6},     {7.5, 6},   {11, 9},   {3.5, 4.5},
                           {7.5, 2.5}, {8.5, 8.5}, {4.5, 1.5}, {4.5, 3}};
  Instance inst = make_instance(9, L(1));
  inst.certain[L(9)] = true;
  for (NodeId i = 0; i < 9; ++i) {
    for (NodeId j = 0; j < 9; ++j) {
      if (i == j) continue;
      double dist = std::hypot(xy[i][0] - xy[j][0], xy[i][1] - xy[j][1]);
      inst.ring_cost(i, j) = dist;
      inst.arc_cost(i, j) = dist;
    }
  }
  // Terminal 4 reaches hub 1 more cheaply than hub 3.
  inst.arc_cost(L(4), L(1)) = 4.0;
  for (NodeId i = 0; i < 9; ++i) {
    for (NodeId j = 0; j < 9; ++j) {
      inst.backup_edge_rate(i, j) = inst.ring_cost(i, j) / 10;
      inst.backup_arc_rate(i, j) = inst.arc_cost(i, j) / 10;
    }
  }
  inst.failure_budget = F;
  return inst;
}

// Ring (1,5,9,6,3,7) with terminals 2->5, 4->7, 8->9.
inline Solution fig2_solution() {
  return make_solution(9, {L(1), L(5), L(9), L(6), L(3), L(7)},
                       {{L(2), L(5)}, {L(4), L(7)}, {L(8), L(9)}});
}

// Uniformly random feasible solution: a random hub set containing the depot
// in random ring order, every terminal assigned to a random hub.
inline Solution random_solution(const Instance& inst, std::mt19937_64& rng, int min_hubs = 3) {
  std::vector<NodeId> others;
  for (NodeId v = 0; v < inst.n; ++v)
    if (v != inst.depot) others.push_back(v);
  std::shuffle(others.begin(), others.end(), rng);
  const int k = std::uniform_int_distribution<int>(min_hubs, inst.n)(rng);
  Solution sol;
  sol.hubs.push_back(inst.depot);
  sol.hubs.insert(sol.hubs.end(), others.begin(), others.begin() + (k - 1));
  std::shuffle(sol.hubs.begin(), sol.hubs.end(), rng);
  sol.assignment.assign(inst.n, kNoHub);
  for (auto it = others.begin() + (k - 1); it != others.end(); ++it)
    sol.assignment[*it] = sol.hubs[std::uniform_int_distribution<std::size_t>(0, sol.hubs.size() - 1)(rng)];
  return sol;
}

inline std::vector<NodeId> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Node v becomes perm[v].
inline Instance relabel(const Instance& inst, const std::vector<NodeId>& perm) {
  Instance out = make_instance(inst.n, perm[inst.depot]);
  out.failure_budget = inst.failure_budget;
  for (NodeId i = 0; i < inst.n; ++i) {
    out.certain[perm[i]] = inst.certain[i];
    out.open_cost[perm[i]] = inst.open_cost[i];
    for (NodeId j = 0; j < inst.n; ++j) {
      out.ring_cost(perm[i], perm[j]) = inst.ring_cost(i, j);
      out.arc_cost(perm[i], perm[j]) = inst.arc_cost(i, j);
      out.backup_edge_rate(perm[i], perm[j]) = inst.backup_edge_rate(i, j);
      out.backup_arc_rate(perm[i], perm[j]) = inst.backup_arc_rate(i, j);
    }
  }
  return out;
}

inline Solution relabel(const Solution& sol, const std::vector<NodeId>& perm) {
  Solution out;
  for (NodeId h : sol.hubs) out.hubs.push_back(perm[h]);
  out.assignment.assign(sol.assignment.size(), kNoHub);
  for (std::size_t t = 0; t < sol.assignment.size(); ++t)
    if (sol.assignment[t] != kNoHub) out.assignment[perm[t]] = perm[sol.assignment[t]];
  return out;
}

// Every cost family multiplied by lambda.
inline Instance scaled(Instance inst, double lambda) {
  for (auto& o : inst.open_cost) o *= lambda;
  for (NodeId i = 0; i < inst.n; ++i) {
    for (NodeId j = 0; j < inst.n; ++j) {
      inst.ring_cost(i, j) *= lambda;
      inst.arc_cost(i, j) *= lambda;
      inst.backup_edge_rate(i, j) *= lambda;
      inst.backup_arc_rate(i, j) *= lambda;
    }
  }
  return inst;
}

// Construction cost by scanning every (i, j) pair and asking whether it is
// a ring edge or a star arc.
inline double naive_rsp_cost(const Instance& inst, const Solution& sol) {
  const int n = inst.n;
  const std::size_t k = sol.hubs.size();
  double total = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    if (std::find(sol.hubs.begin(), sol.hubs.end(), i) != sol.hubs.end()) total += inst.open_cost[i];
    for (NodeId j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < k; ++p)
        if (sol.hubs[p] == i && sol.hubs[(p + 1) % k] == j) total += inst.ring_cost(i, j);
      if (sol.assignment[i] == j) total += inst.arc_cost(i, j);
    }
  }
  return total;
}

// Repair rate of hub h by trying every surviving hub for every orphan.
inline double naive_repair_rate(const Instance& inst, const Solution& sol, NodeId h) {
  const std::size_t k = sol.hubs.size();
  std::size_t p = std::find(sol.hubs.begin(), sol.hubs.end(), h) - sol.hubs.begin();
  double rate = inst.backup_edge_rate(sol.hubs[(p + k - 1) % k], sol.hubs[(p + 1) % k]);
  for (NodeId t = 0; t < inst.n; ++t) {
    if (sol.assignment[t] != h) continue;
    double best = std::numeric_limits<double>::infinity();
    for (NodeId g : sol.hubs)
      if (g != h) best = std::min(best, inst.backup_arc_rate(t, g));
    rate += best;
  }
  return rate;
}

// Worst repair rate over uncertain hubs, 0 when every hub is certain.
inline double naive_worst_rate(const Instance& inst, const Solution& sol) {
  double worst = 0.0;
  for (NodeId h : sol.hubs)
    if (!inst.is_certain(h)) worst = std::max(worst, naive_repair_rate(inst, sol, h));
  return worst;
}

// Deterministic suite of small random instances, n cycling through lo..hi.
inline Instance small_instance(int index, int lo = 5, int hi = 8, double F = 0.0) {
  const int n = lo + index % (hi - lo + 1);
  const Geometry g = index % 2 == 0 ? Geometry::Euclidean : Geometry::Uniform;
  Instance inst = generate_random(n, 0.4, 1000 + static_cast<std::uint64_t>(index), g);
  inst.failure_budget = F;
  return inst;
}

}  // namespace ringstar::testing
