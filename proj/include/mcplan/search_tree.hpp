#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcplan {

/// Index into a domain's action alphabet.
struct ActionId {
  std::uint32_t index = 0;
  auto operator<=>(const ActionId&) const = default;
};

/// Node handle. Carries the tag of the tree that issued it so a handle used
/// against the wrong tree is rejected instead of silently aliasing.
struct NodeId {
  std::uint32_t index = 0;
  std::uint32_t tree_tag = 0;
  auto operator<=>(const NodeId&) const = default;
};

enum class ValueMode { Average, Max };

struct NodeRecord {
  std::optional<NodeId> parent;
  std::optional<ActionId> action;
  std::string state_key;
  std::vector<NodeId> children;
  std::uint64_t visits = 0;
  double total_reward = 0.0;
  std::vector<ActionId> untried_actions;
  bool terminal = false;
};

inline constexpr double kRewardUpperBound = 1.0;
inline constexpr double kConsistencyTolerance = 1e-9;

/// Arena-backed search tree. Nodes are never deleted, so ids stay valid for
/// the lifetime of the tree (and of its copies, which share the tag).
class SearchTree {
 public:
  SearchTree(std::string root_state_key, std::vector<ActionId> root_actions,
             bool root_terminal = false,
             ValueMode value_mode = ValueMode::Average);

  NodeId root() const noexcept { return NodeId{0, tag_}; }
  ValueMode value_mode() const noexcept { return value_mode_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Id for the node at `index`; throws invalid-node when out of range.
  NodeId id_at(std::size_t index) const;
  bool contains(NodeId id) const noexcept;
  const NodeRecord& node(NodeId id) const;

  /// Expands `action` under `parent`. `child_actions` seeds the new node's
  /// untried actions.
  NodeId add_child(NodeId parent, ActionId action, std::string state_key,
                   bool terminal, std::vector<ActionId> child_actions = {});

  /// Adds one playout result to every node on leaf -> root.
  void backpropagate(NodeId leaf, double reward);

  /// Overwrites raw statistics. Used by deserialization and fault injection.
  void set_statistics(NodeId id, std::uint64_t visits, double total_reward);

  double q_value(NodeId id) const;
  /// Always z / n regardless of value mode.
  double mean_value(NodeId id) const;
  NodeId best_child(NodeId id) const;

  bool has_visited_children(NodeId id) const;
  std::vector<NodeId> visited_children(NodeId id) const;
  /// Number of edges from the root.
  std::size_t depth_of(NodeId id) const;
  /// Largest depth among visited nodes.
  std::size_t max_depth() const;
  /// Root-anchored node sequence ending at `id`.
  std::vector<NodeId> path_to(NodeId id) const;

  /// Internal nodes whose statistics disagree with their children's.
  std::vector<NodeId> check_consistency(
      double tolerance = kConsistencyTolerance) const;

 private:
  const NodeRecord& at(NodeId id) const;
  NodeRecord& at(NodeId id);
  void refresh_max_chain(NodeId from);

  std::vector<NodeRecord> nodes_;
  // Max-mode value per node, kept current along every mutated path.
  std::vector<double> max_value_;
  ValueMode value_mode_;
  std::uint32_t tag_;
};

/// Root-to-node quality helpers treat unvisited nodes as absent.
inline bool is_visited(const SearchTree& tree, NodeId id) {
  return tree.node(id).visits > 0;
}

}  // namespace mcplan
