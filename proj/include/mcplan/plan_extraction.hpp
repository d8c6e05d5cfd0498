#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mcplan/plan_metrics.hpp"
#include "mcplan/search_tree.hpp"

namespace mcplan {

/// Counters gathered during one extraction.
struct ExtractionStats {
  std::size_t pops = 0;
  std::size_t pushes = 0;
  std::size_t replacements = 0;
  std::size_t rollbacks = 0;
  /// Quality of each popped stem, filled only when `record_pops` is set.
  bool record_pops = false;
  std::vector<double> popped_qualities;
};

/// Best-first extraction of a bounded plan set from a finished tree.
///
/// Stems are popped from a max-priority queue keyed by relative quality.
/// Each visited child extension meeting `q` is pushed; a stem with no pushed
/// extension is a complete plan and is accepted while fewer than `k` plans
/// are held and its diversity against the set is at least `d`. With a full
/// set, exact quality ties are resolved in favour of the more diverse plan.
/// Equal-quality stems pop most-recent first, which keeps each descent
/// depth-first.
PlanSet extract_plans(const SearchTree& tree, const ExtractionConfig& config,
                      ExtractionStats* stats = nullptr);

/// Follows best_child from the root to a leaf.
Plan best_child_descent(const SearchTree& tree);

struct ScoredPlan {
  Plan plan;
  double quality = 0.0;
};

inline constexpr std::size_t kEnumerationLimit = 10'000;

/// Every root-to-leaf path over visited nodes, by quality descending then by
/// lexicographic child position. Throws tree-too-large past `limit` paths.
std::vector<ScoredPlan> brute_force_enumerate(
    const SearchTree& tree, std::size_t limit = kEnumerationLimit);

/// Scans `plans` (quality-descending) and keeps each one whose diversity
/// against the kept plans is at least `d`, up to `k`.
PlanSet greedy_diverse_filter(const std::vector<ScoredPlan>& plans, double d,
                              std::size_t k);

}  // namespace mcplan
