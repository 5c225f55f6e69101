#pragma once

// Logic-based optimality cuts on the worst repair rate.
//
// A cut generated at a design where uncertain hub h, with ring neighbours u
// and w, serves terminal set T and has repair rate rho reads
//
//   eta >= F * rho * ( [u-h] + [h-w] + sum_{t in T} [t->h]
//                      - sum_{b in B} [b is a hub] - (|T| + 2) + 1 )
//
// where B holds every node that, as a hub, would offer some t in T a backup
// arc strictly cheaper than the one available at the generating design. The
// bracket equals 1 exactly when h keeps its neighbours, still serves all of T
// and no such cheaper hub exists; in that case h's repair rate is at least
// rho. Otherwise the bracket is <= 0 and the cut is slack for any eta >= 0.

#include <algorithm>
#include <limits>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "ringstar/evaluate.hpp"
#include "ringstar/model.hpp"

namespace ringstar {

struct BendersCut {
  NodeId hub = kNoHub;
  std::pair<NodeId, NodeId> neighbors;  // smaller id first
  std::vector<NodeId> terminals;        // ascending
  std::vector<NodeId> blockers;         // ascending
  double rate = 0.0;                    // rho*, monetary units per time unit

  auto key() const { return std::tie(hub, neighbors, terminals, blockers); }
  bool same_key(const BendersCut& other) const { return key() == other.key(); }
};

// Builds the cut for the hub at ring position i of a feasible design.
inline BendersCut make_cut(const Instance& inst, const Solution& design, std::size_t i) {
  BendersCut cut;
  cut.hub = design.hubs[i];
  cut.neighbors = ring_neighbors(design.hubs, i);
  cut.rate = inst.backup_edge_rate(cut.neighbors.first, cut.neighbors.second);

  std::vector<double> reconnect;
  for (NodeId t = 0; t < inst.n; ++t) {
    if (design.assignment[t] != cut.hub) continue;
    cut.terminals.push_back(t);
    double r = detail::cheapest_other_hub(inst.backup_arc_rate, design.hubs, t, cut.hub).second;
    reconnect.push_back(r);
    cut.rate += r;
  }
  for (NodeId v = 0; v < inst.n; ++v) {
    if (v == cut.hub || std::binary_search(cut.terminals.begin(), cut.terminals.end(), v))
      continue;
    for (std::size_t k = 0; k < cut.terminals.size(); ++k) {
      if (inst.backup_arc_rate(cut.terminals[k], v) < reconnect[k]) {
        cut.blockers.push_back(v);
        break;
      }
    }
  }
  return cut;
}

inline bool ring_has_edge(const std::vector<int>& pos, std::size_t ring_size, NodeId a, NodeId b) {
  if (pos[a] < 0 || pos[b] < 0) return false;
  int diff = std::abs(pos[a] - pos[b]);
  return diff == 1 || diff == static_cast<int>(ring_size) - 1;
}

// Value of the bracketed linear form at a design, given the design's ring
// positions. 1 when the cut is active, <= 0 otherwise.
inline int activation(const BendersCut& cut, const Solution& design, const std::vector<int>& pos) {
  const std::size_t k = design.hubs.size();
  int value = 0;
  value += ring_has_edge(pos, k, cut.neighbors.first, cut.hub) ? 1 : 0;
  value += ring_has_edge(pos, k, cut.hub, cut.neighbors.second) ? 1 : 0;
  for (NodeId t : cut.terminals) value += design.assignment[t] == cut.hub ? 1 : 0;
  for (NodeId b : cut.blockers) value -= pos[b] >= 0 ? 1 : 0;
  return value - static_cast<int>(cut.terminals.size() + 2) + 1;
}

inline int activation(const BendersCut& cut, const Solution& design, int n) {
  return activation(cut, design, ring_positions(n, design.hubs));
}

inline bool cut_satisfied(const Instance& inst, const BendersCut& cut, const Solution& design,
                          double eta) {
  const double rhs = inst.failure_budget * cut.rate * activation(cut, design, inst.n);
  return eta >= rhs - kTolerance;
}

// Smallest eta satisfying every cut of the pool at this design (never < 0).
inline double pooled_eta(const Instance& inst, std::span<const BendersCut> pool,
                         const Solution& design) {
  auto pos = ring_positions(inst.n, design.hubs);
  double eta = 0.0;
  for (const auto& cut : pool)
    if (activation(cut, design, pos) == 1) eta = std::max(eta, inst.failure_budget * cut.rate);
  return eta;
}

}  // namespace ringstar
