#pragma once

// Exact best-first branch-and-bound on hub membership. Every fully decided
// node is a leaf whose ring order and assignment are optimised exactly (see
// detail/leaf.hpp); the incumbent is seeded by a short GRASP run.

#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "ringstar/bound.hpp"
#include "ringstar/cut.hpp"
#include "ringstar/detail/leaf.hpp"
#include "ringstar/grasp.hpp"
#include "ringstar/model.hpp"
#include "ringstar/result.hpp"

namespace ringstar {

namespace detail {

struct QueueEntry {
  double bound;
  std::size_t seq;
  std::size_t index;

  // Lowest bound first, then oldest.
  bool operator<(const QueueEntry& other) const {
    if (bound != other.bound) return bound > other.bound;
    return seq > other.seq;
  }
};

inline SolverResult branch_and_bound(const Goal& goal, const SolverOptions& options) {
  const Instance& inst = goal.instance();
  auto violations = validate_instance(inst);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  Stopwatch watch;
  Deadline deadline(options.time_limit);
  SolverResult result;

  auto warm = run_grasp(goal, std::max(1, options.warm_start_iterations), options.seed, deadline);
  double upper = warm.value;
  result.solution = warm.solution;
  double lower = -kInf;
  auto record = [&] { result.trace.push_back({lower, upper}); };

  SearchNode root = root_node(inst);
  root.bound = node_bound(goal, root, options.exact_ring_limit);
  lower = std::min(root.bound, upper);
  record();

  std::vector<SearchNode> nodes;
  std::priority_queue<QueueEntry> open;
  std::size_t seq = 0;
  nodes.push_back(root);
  open.push({root.bound, seq++, 0});
  double unresolved = kInf;  // smallest bound among leaves not solved exactly
  constexpr double kPruneSlack = 1e-9;

  auto raise_lower = [&](double candidate) {
    candidate = std::min(candidate, upper);
    if (candidate > lower) {
      lower = candidate;
      record();
    }
  };

  auto handle_leaf = [&](const SearchNode& node) {
    ++result.nodes;
    LeafResult leaf = solve_leaf(goal, hubs_of(node), upper, deadline, options.exact_ring_limit);
    if (leaf.found && leaf.value < upper) {
      upper = leaf.value;
      result.solution = leaf.solution;
      record();
    }
    if (!leaf.exact && leaf.bound < upper - kPruneSlack) unresolved = std::min(unresolved, leaf.bound);
  };

  bool finished = false;
  while (true) {
    if (open.empty() || open.top().bound >= upper - kPruneSlack) {
      finished = true;
      break;
    }
    raise_lower(std::min(open.top().bound, unresolved));
    if (deadline.expired()) break;

    QueueEntry top = open.top();
    open.pop();
    if (top.bound >= upper - kPruneSlack) continue;
    ++result.nodes;
    SearchNode parent = std::move(nodes[top.index]);
    const NodeId v = branching_node(inst, parent);

    for (HubState choice : {HubState::In, HubState::Out}) {
      SearchNode child;
      child.state = parent.state;
      child.state[v] = choice;
      if (fully_decided(child)) {
        if (hubs_of(child).size() >= 3) handle_leaf(child);
        continue;
      }
      child.bound = partial_bound(inst, child);
      if (child.bound < upper - kPruneSlack) {
        nodes.push_back(std::move(child));
        open.push({nodes.back().bound, seq++, nodes.size() - 1});
      }
    }
  }

  if (finished) raise_lower(unresolved);
  else raise_lower(std::min(open.empty() ? kInf : open.top().bound, unresolved));

  result.objective = goal.value(result.solution);
  result.lower_bound = std::min(lower, result.objective);
  result.wall_time = watch.elapsed();
  finalize(result);
  return result;
}

}  // namespace detail

// Exact solve of one variant. Runs until optimality is proven or the time
// limit passes; in the latter case the incumbent and a valid lower bound are
// returned with the optimality flag cleared.
inline SolverResult solve_bnb(const Instance& inst, Problem problem, const SolverOptions& options = {}) {
  return detail::branch_and_bound(detail::Goal(inst, problem), options);
}

// Benders master: minimises construction cost + eta subject to the cut pool.
inline SolverResult solve_master(const Instance& inst, std::span<const BendersCut> cuts,
                                 const SolverOptions& options = {}) {
  return detail::branch_and_bound(detail::Goal(inst, cuts), options);
}

}  // namespace ringstar
