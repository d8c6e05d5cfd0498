#include <cmath>
#include <limits>

#include "mcplan/mcts_engine.hpp"

namespace mcplan {

void validate(const SearchConfig& config) {
  if (config.iterations == 0) {
    throw PlanningError(ErrorKind::Config, "iterations must be >= 1");
  }
  if (config.max_rollout_steps == 0) {
    throw PlanningError(ErrorKind::Config, "max_rollout_steps must be >= 1");
  }
  if (!std::isfinite(config.bandit.exploration_c) ||
      config.bandit.exploration_c < 0.0) {
    throw PlanningError(ErrorKind::Config,
                        "exploration constant must be finite and >= 0");
  }
  if (config.bandit.diversity_refresh_interval == 0 ||
      config.bandit.diversity_set_size == 0) {
    throw PlanningError(ErrorKind::Config,
                        "diversity refresh interval and set size must be >= 1");
  }
}

double ucb1_score(const SearchTree& tree, NodeId node, double exploration_c) {
  const NodeRecord& rec = tree.node(node);
  if (!rec.parent) {
    throw PlanningError(ErrorKind::NoParent, "the root has no bandit score");
  }
  if (rec.visits == 0) return std::numeric_limits<double>::infinity();
  const auto parent_visits = static_cast<double>(tree.node(*rec.parent).visits);
  const double bonus =
      exploration_c == 0.0
          ? 0.0
          : exploration_c * std::sqrt(2.0 * std::log(parent_visits) /
                                      static_cast<double>(rec.visits));
  return tree.q_value(node) + bonus;
}

double stem_diversity(const SearchTree& tree, NodeId node,
                      const PlanSet& reference) {
  if (reference.empty()) return 1.0;
  const std::vector<NodeId> stem = tree.path_to(node);
  if (stem.size() < 2) return 1.0;
  return min_pairwise_diversity(collect_state_keys(tree, stem),
                                std::span<const Plan>(reference.plans));
}

double diverse_ucb1_score(const SearchTree& tree, NodeId node,
                          double exploration_c, const PlanSet& reference) {
  const double base = ucb1_score(tree, node, exploration_c);
  return base + stem_diversity(tree, node, reference);
}

}  // namespace mcplan
