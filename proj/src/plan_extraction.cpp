#include "mcplan/plan_extraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>

#include "mcplan/error.hpp"

namespace mcplan {
namespace {

// Stems share prefixes through back-links into an arena.
struct StemLink {
  NodeId node;
  std::int64_t prev;
};

struct QueueEntry {
  double log_quality;
  std::uint64_t seq;
  std::uint32_t stem;
};

struct LowerPriority {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.log_quality != b.log_quality) return a.log_quality < b.log_quality;
    return a.seq < b.seq;
  }
};

std::vector<NodeId> unwind(const std::vector<StemLink>& arena,
                           std::uint32_t stem) {
  std::vector<NodeId> nodes;
  for (std::int64_t i = stem; i >= 0; i = arena[i].prev) {
    nodes.push_back(arena[i].node);
  }
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

double diversity_excluding(const std::vector<Plan>& plans, std::size_t skip) {
  double best = 1.0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (i == skip) continue;
    best = std::min(best, state_set_distance(plans[skip], plans[i]));
  }
  return best;
}

// Each plan must be at least `d` away from every plan accepted before it.
bool ordered_diversity_holds(const std::vector<Plan>& plans, double d) {
  for (std::size_t j = 1; j < plans.size(); ++j) {
    const std::span<const Plan> earlier(plans.data(), j);
    if (min_pairwise_diversity(plans[j], earlier) < d) return false;
  }
  return true;
}

void validate(const ExtractionConfig& config) {
  if (!(config.q >= 0.0 && config.q <= 1.0)) {
    throw PlanningError(ErrorKind::Config, "quality bound q must lie in [0, 1]");
  }
  if (!(config.d >= 0.0 && config.d <= 1.0)) {
    throw PlanningError(ErrorKind::Config,
                        "diversity bound d must lie in [0, 1]");
  }
}

}  // namespace

PlanSet extract_plans(const SearchTree& tree, const ExtractionConfig& config,
                      ExtractionStats* stats) {
  validate(config);
  if (tree.node(tree.root()).visits == 0) {
    throw PlanningError(ErrorKind::EmptyTree, "root has never been visited");
  }
  ExtractionStats local;
  ExtractionStats& st = stats ? *stats : local;

  PlanSet result;
  result.constraints = config;
  if (config.k == 0) return result;
  std::vector<Plan>& accepted = result.plans;

  std::vector<StemLink> arena;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, LowerPriority> open;
  std::uint64_t seq = 0;
  arena.push_back({tree.root(), -1});
  open.push({0.0, seq++, 0});
  ++st.pushes;

  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    ++st.pops;
    const double quality = std::exp(top.log_quality);
    if (st.record_pops) st.popped_qualities.push_back(quality);

    const NodeId last = arena[top.stem].node;
    bool expanded = false;
    // Pushed in reverse so that, among equal qualities, the lowest child
    // index pops first and the first plan matches best-child descent.
    const auto& children = tree.node(last).children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      const NodeId child = *it;
      if (tree.node(child).visits == 0) continue;
      const double log_q = top.log_quality + log_step_factor(tree, last, child);
      if (std::exp(log_q) >= config.q - kQualityTolerance) {
        arena.push_back({child, static_cast<std::int64_t>(top.stem)});
        open.push({log_q, seq++, static_cast<std::uint32_t>(arena.size() - 1)});
        ++st.pushes;
        expanded = true;
      }
    }
    if (expanded) continue;

    std::vector<NodeId> nodes = unwind(arena, top.stem);
    std::optional<Plan> candidate;
    double diversity = 1.0;
    if (config.d > 0.0) {
      candidate = make_plan(tree, std::move(nodes));
      diversity = accepted.empty()
                      ? 1.0
                      : min_pairwise_diversity(*candidate,
                                               std::span<const Plan>(accepted));
      if (diversity < config.d) continue;
    }

    if (accepted.size() < config.k) {
      accepted.push_back(candidate ? std::move(*candidate)
                                   : make_plan(tree, std::move(nodes)));
      // Nothing can change once a diversity-free set is full.
      if (config.d == 0.0 && accepted.size() == config.k) break;
      continue;
    }

    double q_min = accepted.front().relative_quality;
    for (const Plan& p : accepted) q_min = std::min(q_min, p.relative_quality);
    if (config.d == 0.0 || quality < q_min - kQualityTolerance) break;

    std::optional<std::size_t> weakest;
    double weakest_diversity = 0.0;
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      if (std::abs(accepted[i].relative_quality - q_min) > kQualityTolerance) {
        continue;
      }
      const double div = diversity_excluding(accepted, i);
      if (!weakest || div < weakest_diversity) {
        weakest = i;
        weakest_diversity = div;
      }
    }
    if (weakest && diversity > weakest_diversity) {
      Plan displaced = std::move(accepted[*weakest]);
      accepted[*weakest] = std::move(*candidate);
      ++st.replacements;
      if (!ordered_diversity_holds(accepted, config.d)) {
        accepted[*weakest] = std::move(displaced);
        ++st.rollbacks;
        --st.replacements;
      }
    }
  }
  return result;
}

Plan best_child_descent(const SearchTree& tree) {
  std::vector<NodeId> nodes{tree.root()};
  while (tree.has_visited_children(nodes.back())) {
    nodes.push_back(tree.best_child(nodes.back()));
  }
  return make_plan(tree, std::move(nodes));
}

std::vector<ScoredPlan> brute_force_enumerate(const SearchTree& tree,
                                              std::size_t limit) {
  if (tree.node(tree.root()).visits == 0) {
    throw PlanningError(ErrorKind::EmptyTree, "root has never been visited");
  }
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const NodeId id = tree.id_at(i);
    if (tree.node(id).visits > 0 && !tree.has_visited_children(id)) ++leaves;
  }
  if (leaves > limit) {
    throw PlanningError(ErrorKind::TreeTooLarge,
                        std::to_string(leaves) + " leaf paths exceed limit " +
                            std::to_string(limit));
  }

  std::vector<ScoredPlan> out;
  out.reserve(leaves);
  std::vector<NodeId> path{tree.root()};
  // Iterative DFS; `cursor[i]` is the next child position to try at depth i.
  std::vector<std::size_t> cursor{0};
  while (!path.empty()) {
    const auto& children = tree.node(path.back()).children;
    if (cursor.back() == 0 && !tree.has_visited_children(path.back())) {
      Plan plan = make_plan(tree, path);
      const double q = plan.relative_quality;
      out.push_back({std::move(plan), q});
    }
    std::size_t& next = cursor.back();
    while (next < children.size() && tree.node(children[next]).visits == 0) {
      ++next;
    }
    if (next < children.size()) {
      path.push_back(children[next++]);
      cursor.push_back(0);
    } else {
      path.pop_back();
      cursor.pop_back();
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredPlan& a, const ScoredPlan& b) {
                     return a.quality > b.quality;
                   });
  return out;
}

PlanSet greedy_diverse_filter(const std::vector<ScoredPlan>& plans, double d,
                              std::size_t k) {
  PlanSet result;
  result.constraints = {k, 0.0, d};
  for (const ScoredPlan& sp : plans) {
    if (result.plans.size() >= k) break;
    if (d > 0.0 && !result.plans.empty() &&
        min_pairwise_diversity(sp.plan, result) < d) {
      continue;
    }
    result.plans.push_back(sp.plan);
  }
  return result;
}

}  // namespace mcplan
