#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "mcplan/error.hpp"
#include "mcplan/plan_extraction.hpp"
#include "mcplan/plan_metrics.hpp"
#include "mcplan/rng.hpp"
#include "mcplan/search_tree.hpp"

namespace mcplan {

template <class State>
struct StepResult {
  State next;
  double reward = 0.0;
  bool terminal = false;
};

/// A deterministic black-box simulator. `legal_actions` must be stable for a
/// given state; `step` must always yield the same successor.
template <class S>
concept Simulator = requires(const S& sim, const typename S::State& state,
                             ActionId action) {
  { sim.initial_state() } -> std::convertible_to<typename S::State>;
  { sim.legal_actions(state) } -> std::convertible_to<std::vector<ActionId>>;
  { sim.step(state, action) } -> std::same_as<StepResult<typename S::State>>;
  { sim.state_key(state) } -> std::convertible_to<std::string>;
  { sim.is_terminal(state) } -> std::convertible_to<bool>;
};

/// Simulators may supply their own rollout policy; others roll out uniformly.
template <class S>
concept HasDefaultPolicy = requires(const S& sim, const typename S::State& state,
                                    Rng& rng) {
  { sim.default_action(state, rng) } -> std::convertible_to<ActionId>;
};

enum class BanditPolicy { Ucb1, DiverseUcb1 };

struct BanditConfig {
  double exploration_c = 1.0;
  BanditPolicy policy = BanditPolicy::Ucb1;
  std::size_t diversity_refresh_interval = 500;
  std::size_t diversity_set_size = 5;
};

struct SearchConfig {
  std::size_t iterations = 1000;
  std::size_t max_rollout_steps = 1000;
  ValueMode value_mode = ValueMode::Average;
  BanditConfig bandit;
  std::uint64_t seed = 0;
};

void validate(const SearchConfig& config);

/// Q + C * sqrt(2 ln n_parent / n); +inf for an unvisited node.
double ucb1_score(const SearchTree& tree, NodeId node, double exploration_c);

/// Diversity of the root->node stem against `reference`; 1.0 when the stem
/// has no states beyond the root or the reference set is empty.
double stem_diversity(const SearchTree& tree, NodeId node,
                      const PlanSet& reference);

/// ucb1_score plus the (unweighted) stem diversity bonus.
double diverse_ucb1_score(const SearchTree& tree, NodeId node,
                          double exploration_c, const PlanSet& reference);

struct SearchHooks {
  /// Replaces stem_diversity in DiverseUcb1 selection when set.
  std::function<double(const SearchTree&, NodeId, const PlanSet&)> diversity;
};

template <Simulator Sim>
ActionId rollout_action(const Sim& sim, const typename Sim::State& state,
                        const std::vector<ActionId>& legal, Rng& rng) {
  if constexpr (HasDefaultPolicy<Sim>) {
    return sim.default_action(state, rng);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    return legal[pick(rng)];
  }
}

/// Plays the default policy from `state` for at most `max_steps` steps and
/// returns the reward collected on the way, clamped to [0, 1]. A terminal
/// start state collects nothing.
template <Simulator Sim>
double rollout(const Sim& sim, typename Sim::State state, Rng& rng,
               std::size_t max_steps) {
  if (max_steps == 0) {
    throw PlanningError(ErrorKind::Config, "max_rollout_steps must be >= 1");
  }
  if (sim.is_terminal(state)) return 0.0;
  double total = 0.0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const std::vector<ActionId> legal = sim.legal_actions(state);
    if (legal.empty()) break;
    auto result = sim.step(state, rollout_action(sim, state, legal, rng));
    total += result.reward;
    state = std::move(result.next);
    if (result.terminal) break;
  }
  return std::clamp(total, 0.0, kRewardUpperBound);
}

/// Builds a search tree with exactly `config.iterations` playouts.
///
/// Each iteration descends through visited children by bandit score until it
/// meets a terminal node, a node with untried actions, or a dead end; expands
/// one untried action chosen uniformly; rolls out from the new node; and
/// backpropagates the clamped sum of in-tree and rollout rewards.
template <Simulator Sim>
SearchTree run_search(const Sim& sim, const SearchConfig& config,
                      const SearchHooks& hooks = {}) {
  using State = typename Sim::State;
  validate(config);

  try {
    State initial = sim.initial_state();
    const bool root_terminal = sim.is_terminal(initial);
    SearchTree tree(sim.state_key(initial),
                    root_terminal ? std::vector<ActionId>{}
                                  : sim.legal_actions(initial),
                    root_terminal, config.value_mode);

    // Per-node simulator state and reward collected from the root to it.
    std::vector<State> states{std::move(initial)};
    std::vector<double> path_reward{0.0};

    const bool diverse = config.bandit.policy == BanditPolicy::DiverseUcb1;
    const double c = config.bandit.exploration_c;
    PlanSet reference;
    Rng tree_rng = make_stream(config.seed, streams::kTreeBuild);

    auto score = [&](NodeId child) {
      if (!diverse) return ucb1_score(tree, child, c);
      const double bonus = hooks.diversity
                               ? hooks.diversity(tree, child, reference)
                               : stem_diversity(tree, child, reference);
      return ucb1_score(tree, child, c) + bonus;
    };

    for (std::size_t it = 0; it < config.iterations; ++it) {
      if (diverse && it > 0 && it % config.bandit.diversity_refresh_interval == 0) {
        reference = extract_plans(
            tree, ExtractionConfig::top_k(config.bandit.diversity_set_size));
      }

      NodeId cur = tree.root();
      for (;;) {
        const NodeRecord& rec = tree.node(cur);
        if (rec.terminal) break;
        if (!rec.untried_actions.empty()) {
          std::uniform_int_distribution<std::size_t> pick(
              0, rec.untried_actions.size() - 1);
          const ActionId action = rec.untried_actions[pick(tree_rng)];
          auto result = sim.step(states[cur.index], action);
          std::vector<ActionId> child_actions;
          if (!result.terminal) child_actions = sim.legal_actions(result.next);
          const NodeId child =
              tree.add_child(cur, action, sim.state_key(result.next),
                             result.terminal, std::move(child_actions));
          path_reward.push_back(path_reward[cur.index] + result.reward);
          states.push_back(std::move(result.next));
          cur = child;
          break;
        }
        if (rec.children.empty()) break;

        NodeId best = rec.children.front();
        double best_score = score(best);
        for (std::size_t i = 1; i < rec.children.size(); ++i) {
          const double s = score(rec.children[i]);
          if (s > best_score) {
            best = rec.children[i];
            best_score = s;
          }
        }
        cur = best;
      }

      double reward = path_reward[cur.index];
      if (!tree.node(cur).terminal) {
        Rng rollout_rng =
            make_stream(config.seed, streams::kRolloutBase + it);
        reward += rollout(sim, states[cur.index], rollout_rng,
                          config.max_rollout_steps);
      }
      tree.backpropagate(cur, std::clamp(reward, 0.0, kRewardUpperBound));
    }
    return tree;
  } catch (const PlanningError&) {
    throw;
  } catch (const std::exception& e) {
    throw PlanningError(ErrorKind::DomainFault, e.what());
  }
}

}  // namespace mcplan
