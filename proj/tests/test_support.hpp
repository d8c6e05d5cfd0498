#pragma once

// Random tree generation and independent reference computations used by the
// unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "mcplan/plan_metrics.hpp"
#include "mcplan/rng.hpp"
#include "mcplan/search_tree.hpp"

namespace testing {

using namespace mcplan;

struct TreeShape {
  std::size_t playouts = 200;
  std::size_t max_actions = 3;
  // Rewards are drawn from {0, 1/levels, ..., 1} so equal q-values are common.
  int reward_levels = 4;
  // Distinct state keys; a small alphabet makes plans share states.
  int key_alphabet = 10;
  // Chance that a playout stops at an internal node instead of descending.
  double stop_probability = 0.1;
  ValueMode mode = ValueMode::Average;
};

inline std::string key_of(int k) { return "s" + std::to_string(k); }

inline std::vector<ActionId> random_actions(Rng& rng, std::size_t max_actions) {
  std::uniform_int_distribution<std::size_t> count(0, max_actions);
  std::vector<ActionId> out;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<std::uint32_t>(i)});
  return out;
}

/// Grows a tree by random descents, expanding one untried action per playout
/// and backpropagating a discrete reward, so every node is visited.
inline SearchTree random_tree(Rng& rng, const TreeShape& shape) {
  std::uniform_int_distribution<int> key(0, shape.key_alphabet - 1);
  std::uniform_int_distribution<int> level(0, shape.reward_levels);
  std::bernoulli_distribution stop(shape.stop_probability);
  std::uniform_int_distribution<std::size_t> root_count(1, std::max<std::size_t>(1, shape.max_actions));

  std::vector<ActionId> root_actions;
  for (std::size_t i = 0, n = root_count(rng); i < n; ++i) {
    root_actions.push_back({static_cast<std::uint32_t>(i)});
  }
  SearchTree tree("root", root_actions, false, shape.mode);
  for (std::size_t p = 0; p < shape.playouts; ++p) {
    NodeId cur = tree.root();
    for (;;) {
      const NodeRecord& rec = tree.node(cur);
      if (!rec.untried_actions.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, rec.untried_actions.size() - 1);
        const ActionId a = rec.untried_actions[pick(rng)];
        cur = tree.add_child(cur, a, key_of(key(rng)), false,
                             random_actions(rng, shape.max_actions));
        break;
      }
      if (rec.children.empty() || stop(rng)) break;
      std::uniform_int_distribution<std::size_t> pick(0, rec.children.size() - 1);
      cur = rec.children[pick(rng)];
    }
    tree.backpropagate(cur, static_cast<double>(level(rng)) / shape.reward_levels);
  }
  return tree;
}

/// Same growth process, but every playout is credited to a leaf, so each
/// internal node's statistics are exactly the sum of its children's.
inline SearchTree leaf_playout_tree(Rng& rng, const TreeShape& shape) {
  std::uniform_int_distribution<int> key(0, shape.key_alphabet - 1);
  std::uniform_int_distribution<int> level(0, shape.reward_levels);
  std::vector<ActionId> root_actions;
  for (std::size_t i = 0; i < std::max<std::size_t>(1, shape.max_actions); ++i) {
    root_actions.push_back({static_cast<std::uint32_t>(i)});
  }
  SearchTree tree("root", root_actions, false, shape.mode);
  for (std::size_t p = 0; p < shape.playouts; ++p) {
    NodeId cur = tree.root();
    for (;;) {
      const NodeRecord& rec = tree.node(cur);
      if (!rec.untried_actions.empty()) {
        cur = tree.add_child(cur, rec.untried_actions.front(), key_of(key(rng)), false,
                             random_actions(rng, shape.max_actions));
        break;
      }
      if (rec.children.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, rec.children.size() - 1);
      cur = rec.children[pick(rng)];
    }
  }
  std::vector<NodeId> leaves;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (tree.node(tree.id_at(i)).children.empty()) leaves.push_back(tree.id_at(i));
  }
  std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
  for (NodeId leaf : leaves) {
    tree.backpropagate(leaf, static_cast<double>(level(rng)) / shape.reward_levels);
  }
  for (std::size_t p = 0; p < shape.playouts; ++p) {
    tree.backpropagate(leaves[pick(rng)],
                       static_cast<double>(level(rng)) / shape.reward_levels);
  }
  return tree;
}

/// Q-value recomputed from raw statistics.
inline double reference_q(const SearchTree& tree, NodeId id) {
  const NodeRecord& rec = tree.node(id);
  if (tree.value_mode() == ValueMode::Max) {
    bool any = false;
    double best = 0.0;
    for (NodeId c : rec.children) {
      if (tree.node(c).visits == 0) continue;
      best = any ? std::max(best, reference_q(tree, c)) : reference_q(tree, c);
      any = true;
    }
    if (any) return best;
  }
  return rec.total_reward / static_cast<double>(rec.visits);
}

/// Plain product of step ratios; a zero best sibling contributes 1.
inline double reference_quality(const SearchTree& tree, const std::vector<NodeId>& nodes) {
  double product = 1.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double best = 0.0;
    for (NodeId c : tree.node(nodes[i]).children) {
      if (tree.node(c).visits > 0) best = std::max(best, reference_q(tree, c));
    }
    if (best > 0.0) product *= reference_q(tree, nodes[i + 1]) / best;
  }
  return product;
}

struct ReferencePlan {
  std::vector<NodeId> nodes;
  double quality = 1.0;
};

/// Recursive enumeration of every root-to-leaf path over visited nodes.
inline void enumerate_into(const SearchTree& tree, std::vector<NodeId>& path,
                           std::vector<ReferencePlan>& out) {
  bool leaf = true;
  for (NodeId c : tree.node(path.back()).children) {
    if (tree.node(c).visits == 0) continue;
    leaf = false;
    path.push_back(c);
    enumerate_into(tree, path, out);
    path.pop_back();
  }
  if (leaf) out.push_back({path, reference_quality(tree, path)});
}

inline std::vector<ReferencePlan> reference_enumerate(const SearchTree& tree) {
  std::vector<ReferencePlan> out;
  std::vector<NodeId> path{tree.root()};
  enumerate_into(tree, path, out);
  return out;
}

inline std::size_t count_leaves(const SearchTree& tree) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const NodeId id = tree.id_at(i);
    if (tree.node(id).visits > 0 && !tree.has_visited_children(id)) ++n;
  }
  return n;
}

/// One-way state-set distance on explicit sets.
inline double reference_distance(const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
  std::size_t missing = 0;
  for (const auto& s : a) missing += b.count(s) == 0;
  return static_cast<double>(missing) / static_cast<double>(a.size());
}

inline std::set<std::string> key_set(const SearchTree& tree,
                                     const std::vector<NodeId>& nodes) {
  std::set<std::string> out;
  for (std::size_t i = 1; i < nodes.size(); ++i) out.insert(tree.node(nodes[i]).state_key);
  return out;
}

/// Builds a one-level tree whose children have the given (z, n) statistics.
inline SearchTree star_tree(const std::vector<std::pair<double, std::uint64_t>>& stats,
                            ValueMode mode = ValueMode::Average) {
  std::vector<ActionId> actions;
  for (std::size_t i = 0; i < stats.size(); ++i) actions.push_back({static_cast<std::uint32_t>(i)});
  SearchTree tree("root", actions, false, mode);
  std::uint64_t n = 0;
  double z = 0.0;
  std::vector<NodeId> kids;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    kids.push_back(tree.add_child(tree.root(), actions[i], key_of(static_cast<int>(i)), true));
  }
  for (std::size_t i = 0; i < stats.size(); ++i) {
    tree.set_statistics(kids[i], stats[i].second, stats[i].first);
    n += stats[i].second;
    z += stats[i].first;
  }
  tree.set_statistics(tree.root(), n, z);
  return tree;
}

}  // namespace testing
