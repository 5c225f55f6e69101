#pragma once

// Search nodes of the hub-membership branch-and-bound and their lower bound.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ringstar/detail/leaf.hpp"
#include "ringstar/model.hpp"

namespace ringstar {

enum class HubState : std::uint8_t { Undecided, In, Out };

struct SearchNode {
  std::vector<HubState> state;
  double bound = 0.0;
};

inline SearchNode root_node(const Instance& inst) {
  SearchNode node;
  node.state.assign(inst.n, HubState::Undecided);
  node.state[inst.depot] = HubState::In;
  return node;
}

namespace detail {

inline void check_node(const Instance& inst, const SearchNode& node) {
  if (node.state.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("search node does not match the instance size");
  if (node.state[inst.depot] != HubState::In)
    throw std::invalid_argument("search node excludes the depot from the ring");
}

inline bool fully_decided(const SearchNode& node) {
  for (HubState s : node.state)
    if (s == HubState::Undecided) return false;
  return true;
}

inline std::vector<NodeId> hubs_of(const SearchNode& node) {
  std::vector<NodeId> hubs;
  for (NodeId v = 0; v < static_cast<NodeId>(node.state.size()); ++v)
    if (node.state[v] == HubState::In) hubs.push_back(v);
  return hubs;
}

// Per-node ingredients of the bound, over the nodes that may still be hubs.
struct NodeCosts {
  bool feasible = true;
  std::vector<double> ring_half;   // open cost + half the two cheapest ring edges
  std::vector<double> min_assign;  // cheapest arc to another potential hub
};

inline NodeCosts node_costs(const Instance& inst, const SearchNode& node) {
  NodeCosts nc;
  std::vector<NodeId> open;
  for (NodeId v = 0; v < inst.n; ++v)
    if (node.state[v] != HubState::Out) open.push_back(v);
  if (open.size() < 3) {
    nc.feasible = false;
    return nc;
  }
  nc.ring_half.assign(inst.n, kInf);
  nc.min_assign.assign(inst.n, kInf);
  for (NodeId v = 0; v < inst.n; ++v) {
    double a = kInf, b = kInf, arc = kInf;
    for (NodeId u : open) {
      if (u == v) continue;
      double c = inst.ring_cost(u, v);
      if (c < a) {
        b = a;
        a = c;
      } else if (c < b) {
        b = c;
      }
      arc = std::min(arc, inst.arc_cost(v, u));
    }
    nc.ring_half[v] = inst.open_cost[v] + 0.5 * (a + b);
    nc.min_assign[v] = arc;
  }
  return nc;
}

// Bound of a node with undecided members. Committed hubs pay their opening
// cost and half their two cheapest ring edges, excluded nodes their cheapest
// arc, and undecided nodes the cheaper of the two roles. The repair and
// backup terms are bounded below by zero.
inline double partial_bound(const Instance& inst, const SearchNode& node) {
  NodeCosts nc = node_costs(inst, node);
  if (!nc.feasible) return kInf;
  double total = 0.0;
  for (NodeId v = 0; v < inst.n; ++v) {
    switch (node.state[v]) {
      case HubState::In:
        total += nc.ring_half[v];
        break;
      case HubState::Out:
        total += nc.min_assign[v];
        break;
      case HubState::Undecided:
        total += std::min(nc.ring_half[v], nc.min_assign[v]);
        break;
    }
  }
  return total;
}

// Undecided node whose two roles differ most in cost, lowest id on ties;
// kNoHub when everything is decided.
inline NodeId branching_node(const Instance& inst, const SearchNode& node) {
  NodeCosts nc = node_costs(inst, node);
  NodeId best = kNoHub;
  double best_score = -1.0;
  for (NodeId v = 0; v < inst.n; ++v) {
    if (node.state[v] != HubState::Undecided) continue;
    double score = nc.feasible ? std::abs(nc.min_assign[v] - nc.ring_half[v]) : 0.0;
    if (score > best_score) {
      best_score = score;
      best = v;
    }
  }
  return best;
}

inline double node_bound(const Goal& goal, const SearchNode& node, int exact_ring_limit) {
  const Instance& inst = goal.instance();
  if (!fully_decided(node)) return partial_bound(inst, node);
  auto hubs = hubs_of(node);
  if (hubs.size() < 3) return kInf;
  LeafResult leaf = solve_leaf(goal, hubs, kInf, Deadline(), exact_ring_limit);
  return leaf.exact ? leaf.value : leaf.bound;
}

}  // namespace detail

// Admissible bound on every completion of the node. Fully decided nodes get
// the exact value of their best completion (for rings within the exact
// limit). +infinity when fewer than three nodes can still be hubs.
inline double lower_bound(const Instance& inst, Problem problem, const SearchNode& node,
                          int exact_ring_limit = 10) {
  detail::check_node(inst, node);
  return detail::node_bound(detail::Goal(inst, problem), node, exact_ring_limit);
}

}  // namespace ringstar
