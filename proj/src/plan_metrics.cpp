#include "mcplan/plan_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mcplan/error.hpp"

namespace mcplan {

double log_step_factor(const SearchTree& tree, NodeId parent, NodeId child) {
  double best = 0.0;
  for (NodeId c : tree.node(parent).children) {
    if (tree.node(c).visits > 0) best = std::max(best, tree.q_value(c));
  }
  if (best <= 0.0) return 0.0;
  const double q = tree.q_value(child);
  if (q <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(q / best);
}

double relative_plan_quality(const SearchTree& tree,
                             std::span<const NodeId> nodes) {
  if (nodes.empty() || nodes.front() != tree.root()) {
    throw PlanningError(ErrorKind::InvalidPlan, "plan must start at the root");
  }
  double log_quality = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeRecord& n = tree.node(nodes[i]);
    if (n.visits == 0) {
      throw PlanningError(ErrorKind::InvalidPlan,
                          "plan visits unvisited node " +
                              std::to_string(nodes[i].index));
    }
    if (i == 0) continue;
    if (n.parent != nodes[i - 1]) {
      throw PlanningError(ErrorKind::InvalidPlan,
                          "node " + std::to_string(nodes[i].index) +
                              " is not a child of its predecessor");
    }
    log_quality += log_step_factor(tree, nodes[i - 1], nodes[i]);
  }
  return std::exp(log_quality);
}

double absolute_quality(const SearchTree& tree, double relative_quality) {
  return relative_quality * tree.q_value(tree.root());
}

std::vector<std::string> collect_state_keys(const SearchTree& tree,
                                            std::span<const NodeId> nodes) {
  std::vector<std::string> keys;
  keys.reserve(nodes.size());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    keys.push_back(tree.node(nodes[i]).state_key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

Plan make_plan(const SearchTree& tree, std::vector<NodeId> nodes) {
  Plan plan;
  plan.relative_quality = relative_plan_quality(tree, nodes);
  plan.absolute_quality = absolute_quality(tree, plan.relative_quality);
  plan.actions.reserve(nodes.size());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    plan.actions.push_back(*tree.node(nodes[i]).action);
  }
  plan.state_keys = collect_state_keys(tree, nodes);
  plan.nodes = std::move(nodes);
  return plan;
}

double state_set_distance(std::span<const std::string> keys_a,
                          std::span<const std::string> keys_b) {
  if (keys_a.empty()) {
    throw PlanningError(ErrorKind::DegeneratePlan,
                        "plan has no states beyond the root");
  }
  std::size_t missing = 0;
  auto b = keys_b.begin();
  for (const std::string& key : keys_a) {
    while (b != keys_b.end() && *b < key) ++b;
    if (b == keys_b.end() || *b != key) ++missing;
  }
  return static_cast<double>(missing) / static_cast<double>(keys_a.size());
}

double state_set_distance(const Plan& a, const Plan& b) {
  return state_set_distance(a.state_keys, b.state_keys);
}

double min_pairwise_diversity(std::span<const std::string> keys,
                              std::span<const Plan> set) {
  double best = 1.0;
  for (const Plan& other : set) {
    best = std::min(best, state_set_distance(keys, other.state_keys));
  }
  return best;
}

double min_pairwise_diversity(const Plan& plan, std::span<const Plan> set) {
  return min_pairwise_diversity(plan.state_keys, set);
}

double min_pairwise_diversity(const Plan& plan, const PlanSet& set) {
  return min_pairwise_diversity(plan, std::span<const Plan>(set.plans));
}

}  // namespace mcplan
