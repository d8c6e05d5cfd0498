#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mcplan/search_tree.hpp"

namespace mcplan {

/// Cardinality bound meaning "no limit"; selects top-quality behaviour.
inline constexpr std::size_t kUnboundedK = std::numeric_limits<std::size_t>::max();

/// Tolerance for quality ties and threshold comparisons.
inline constexpr double kQualityTolerance = 1e-12;

/// A root-anchored path through a tree, materialized with its actions and the
/// set of states it visits (root state excluded, sorted, unique).
struct Plan {
  std::vector<NodeId> nodes;
  std::vector<ActionId> actions;
  std::vector<std::string> state_keys;
  double relative_quality = 1.0;
  double absolute_quality = 0.0;
};

struct ExtractionConfig {
  std::size_t k = 1;
  double q = 0.0;
  double d = 0.0;

  static ExtractionConfig top_k(std::size_t k) { return {k, 0.0, 0.0}; }
  static ExtractionConfig top_quality(double q) { return {kUnboundedK, q, 0.0}; }
  static ExtractionConfig diverse(std::size_t k, double q, double d) {
    return {k, q, d};
  }
};

/// Accepted plans in acceptance order plus the bounds that produced them.
struct PlanSet {
  std::vector<Plan> plans;
  ExtractionConfig constraints;

  std::size_t size() const noexcept { return plans.size(); }
  bool empty() const noexcept { return plans.empty(); }
};

/// Log of one step's quality factor Q(child) / max visited sibling Q.
/// Returns 0 when every sibling is worthless and -inf when the child is.
double log_step_factor(const SearchTree& tree, NodeId parent, NodeId child);

/// Product of per-step regret ratios along `nodes`, accumulated in log space.
/// Throws invalid-plan unless `nodes` is a visited, root-anchored path.
double relative_plan_quality(const SearchTree& tree, std::span<const NodeId> nodes);

/// Expected return of following the plan: relative quality times Q(root).
double absolute_quality(const SearchTree& tree, double relative_quality);

/// Sorted unique state keys along `nodes`, skipping the root.
std::vector<std::string> collect_state_keys(const SearchTree& tree,
                                            std::span<const NodeId> nodes);

/// Builds a complete Plan (actions, keys, both qualities) for a path.
Plan make_plan(const SearchTree& tree, std::vector<NodeId> nodes);

/// One-way state-set distance |a - b| / |a| over sorted unique key sets.
double state_set_distance(std::span<const std::string> keys_a,
                          std::span<const std::string> keys_b);
double state_set_distance(const Plan& a, const Plan& b);

/// Minimum distance from `plan` to any member; 1.0 for an empty set.
double min_pairwise_diversity(std::span<const std::string> keys,
                              std::span<const Plan> set);
double min_pairwise_diversity(const Plan& plan, std::span<const Plan> set);
double min_pairwise_diversity(const Plan& plan, const PlanSet& set);

}  // namespace mcplan
