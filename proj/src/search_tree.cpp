#include "mcplan/search_tree.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <utility>

#include "mcplan/error.hpp"

namespace mcplan {
namespace {

std::uint32_t next_tree_tag() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

SearchTree::SearchTree(std::string root_state_key,
                       std::vector<ActionId> root_actions, bool root_terminal,
                       ValueMode value_mode)
    : value_mode_(value_mode), tag_(next_tree_tag()) {
  NodeRecord root;
  root.state_key = std::move(root_state_key);
  root.untried_actions = std::move(root_actions);
  root.terminal = root_terminal;
  nodes_.push_back(std::move(root));
  max_value_.push_back(0.0);
}

NodeId SearchTree::id_at(std::size_t index) const {
  if (index >= nodes_.size()) {
    throw PlanningError(ErrorKind::InvalidNode,
                        "index " + std::to_string(index) + " out of range");
  }
  return NodeId{static_cast<std::uint32_t>(index), tag_};
}

bool SearchTree::contains(NodeId id) const noexcept {
  return id.tree_tag == tag_ && id.index < nodes_.size();
}

const NodeRecord& SearchTree::at(NodeId id) const {
  if (id.tree_tag != tag_) {
    throw PlanningError(ErrorKind::InvalidNode,
                        "node id belongs to a different tree");
  }
  if (id.index >= nodes_.size()) {
    throw PlanningError(ErrorKind::InvalidNode,
                        "node " + std::to_string(id.index) + " does not exist");
  }
  return nodes_[id.index];
}

NodeRecord& SearchTree::at(NodeId id) {
  return const_cast<NodeRecord&>(std::as_const(*this).at(id));
}

const NodeRecord& SearchTree::node(NodeId id) const { return at(id); }

NodeId SearchTree::add_child(NodeId parent, ActionId action,
                             std::string state_key, bool terminal,
                             std::vector<ActionId> child_actions) {
  NodeRecord& p = at(parent);
  auto untried = std::find(p.untried_actions.begin(), p.untried_actions.end(),
                           action);
  if (untried == p.untried_actions.end()) {
    for (NodeId c : p.children) {
      if (nodes_[c.index].action == action) {
        throw PlanningError(ErrorKind::DuplicateEdge,
                            "action " + std::to_string(action.index) +
                                " already expanded under node " +
                                std::to_string(parent.index));
      }
    }
    throw PlanningError(ErrorKind::InvalidAction,
                        "action " + std::to_string(action.index) +
                            " is not untried at node " +
                            std::to_string(parent.index));
  }
  p.untried_actions.erase(untried);

  const NodeId id{static_cast<std::uint32_t>(nodes_.size()), tag_};
  NodeRecord child;
  child.parent = parent;
  child.action = action;
  child.state_key = std::move(state_key);
  child.terminal = terminal;
  child.untried_actions = std::move(child_actions);
  // `p` may dangle after the push_back below.
  nodes_[parent.index].children.push_back(id);
  nodes_.push_back(std::move(child));
  max_value_.push_back(0.0);
  return id;
}

void SearchTree::backpropagate(NodeId leaf, double reward) {
  at(leaf);
  if (!(reward >= 0.0 && reward <= kRewardUpperBound)) {
    throw PlanningError(ErrorKind::RewardRange,
                        "reward " + std::to_string(reward) +
                            " outside [0, 1]");
  }
  std::optional<NodeId> cur = leaf;
  while (cur) {
    NodeRecord& n = nodes_[cur->index];
    n.visits += 1;
    n.total_reward += reward;
    cur = n.parent;
  }
  refresh_max_chain(leaf);
}

void SearchTree::set_statistics(NodeId id, std::uint64_t visits,
                                double total_reward) {
  NodeRecord& n = at(id);
  n.visits = visits;
  n.total_reward = total_reward;
  refresh_max_chain(id);
}

void SearchTree::refresh_max_chain(NodeId from) {
  std::optional<NodeId> cur = from;
  while (cur) {
    const NodeRecord& n = nodes_[cur->index];
    double best = -1.0;
    for (NodeId c : n.children) {
      if (nodes_[c.index].visits > 0) {
        best = std::max(best, max_value_[c.index]);
      }
    }
    if (best < 0.0) {
      best = n.visits > 0 ? n.total_reward / static_cast<double>(n.visits)
                          : 0.0;
    }
    max_value_[cur->index] = best;
    cur = n.parent;
  }
}

double SearchTree::mean_value(NodeId id) const {
  const NodeRecord& n = at(id);
  if (n.visits == 0) {
    throw PlanningError(ErrorKind::UndefinedValue,
                        "node " + std::to_string(id.index) + " is unvisited");
  }
  return n.total_reward / static_cast<double>(n.visits);
}

double SearchTree::q_value(NodeId id) const {
  if (value_mode_ == ValueMode::Average) return mean_value(id);
  if (at(id).visits == 0) {
    throw PlanningError(ErrorKind::UndefinedValue,
                        "node " + std::to_string(id.index) + " is unvisited");
  }
  return max_value_[id.index];
}

bool SearchTree::has_visited_children(NodeId id) const {
  for (NodeId c : at(id).children) {
    if (nodes_[c.index].visits > 0) return true;
  }
  return false;
}

std::vector<NodeId> SearchTree::visited_children(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId c : at(id).children) {
    if (nodes_[c.index].visits > 0) out.push_back(c);
  }
  return out;
}

NodeId SearchTree::best_child(NodeId id) const {
  std::optional<NodeId> best;
  double best_q = 0.0;
  for (NodeId c : at(id).children) {
    if (nodes_[c.index].visits == 0) continue;
    const double q = q_value(c);
    // Strict comparison keeps the lowest-index child on ties.
    if (!best || q > best_q) {
      best = c;
      best_q = q;
    }
  }
  if (!best) {
    throw PlanningError(ErrorKind::Leaf, "node " + std::to_string(id.index) +
                                             " has no visited children");
  }
  return *best;
}

std::size_t SearchTree::depth_of(NodeId id) const {
  std::size_t depth = 0;
  for (auto cur = at(id).parent; cur; cur = nodes_[cur->index].parent) {
    ++depth;
  }
  return depth;
}

std::size_t SearchTree::max_depth() const {
  // Parents always precede children in the arena.
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    depth[i] = depth[nodes_[i].parent->index] + 1;
    if (nodes_[i].visits > 0) deepest = std::max(deepest, depth[i]);
  }
  return deepest;
}

std::vector<NodeId> SearchTree::path_to(NodeId id) const {
  std::vector<NodeId> path;
  for (std::optional<NodeId> cur = id; cur; cur = at(*cur).parent) {
    path.push_back(*cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<NodeId> SearchTree::check_consistency(double tolerance) const {
  std::vector<NodeId> violations;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NodeRecord& n = nodes_[i];
    if (n.children.empty()) continue;
    std::uint64_t child_visits = 0;
    double child_reward = 0.0;
    for (NodeId c : n.children) {
      child_visits += nodes_[c.index].visits;
      child_reward += nodes_[c.index].total_reward;
    }
    if (child_visits == 0) continue;
    bool ok = n.visits >= child_visits;
    if (ok) {
      const auto own = static_cast<double>(n.visits - child_visits);
      if (own == 0.0) {
        // No playout stopped here, so Q(n) is the visit-weighted child mean.
        const double q = n.total_reward / static_cast<double>(n.visits);
        const double weighted = child_reward / static_cast<double>(child_visits);
        ok = std::abs(q - weighted) <= tolerance;
      } else {
        // Playouts that stopped here contributed rewards in [0, own].
        const double residual = n.total_reward - child_reward;
        ok = residual >= -tolerance &&
             residual <= own * kRewardUpperBound + tolerance;
      }
    }
    if (!ok) violations.push_back(NodeId{static_cast<std::uint32_t>(i), tag_});
  }
  return violations;
}

}  // namespace mcplan
