#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcplan/mcts_engine.hpp"
#include "mcplan/rng.hpp"
#include "mcplan/search_tree.hpp"

namespace mcplan::grid {

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Moves in action-index order. North decreases y (row 0 is the top row).
enum class Move : std::uint32_t { North = 0, East = 1, South = 2, West = 3 };
inline constexpr std::size_t kMoveCount = 4;

ActionId to_action(Move move) noexcept;
Cell apply(Cell cell, ActionId action);
char move_letter(ActionId action);
std::string format_moves(const std::vector<ActionId>& actions);

inline constexpr double kDiscount = 0.99;
inline constexpr double kGreedyProbability = 0.8;

class GridWorld {
 public:
  GridWorld(int width, int height, Cell start, Cell goal,
            std::vector<Cell> enemies, int detection_radius = 0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Cell start() const noexcept { return start_; }
  Cell goal() const noexcept { return goal_; }
  /// Sorted by (x, y).
  const std::vector<Cell>& enemies() const noexcept { return enemies_; }
  int detection_radius() const noexcept { return detection_radius_; }
  /// Fraction of non-start/goal cells holding an enemy.
  double risk() const noexcept;
  /// Planning horizon 4 * (width + height).
  int horizon() const noexcept { return 4 * (width_ + height_); }

  bool in_bounds(Cell c) const noexcept;
  bool is_enemy(Cell c) const noexcept;
  /// True when `c` is within Chebyshev detection_radius of an enemy.
  bool is_detected(Cell c) const noexcept;

  GridWorld with_detection_radius(int radius) const;

 private:
  std::size_t index(Cell c) const noexcept;

  int width_;
  int height_;
  Cell start_;
  Cell goal_;
  std::vector<Cell> enemies_;
  int detection_radius_;
  std::vector<bool> enemy_mask_;
  std::vector<bool> danger_mask_;
};

/// Start at the left-edge midpoint, goal at the right-edge midpoint, and
/// round(risk * (cells - 2)) enemies drawn without replacement.
GridWorld generate_instance(int width, int height, double risk, Rng& rng,
                            int detection_radius = 0);

struct DroneState {
  Cell position;
  int steps_taken = 0;
  bool done = false;
};

/// The world with its enemies removed. Reaching the goal ends the episode with
/// reward 0.99^steps; running out of horizon ends it with reward 0.
class PlanningSimulator {
 public:
  using State = DroneState;

  explicit PlanningSimulator(const GridWorld& world);

  DroneState initial_state() const;
  std::vector<ActionId> legal_actions(const DroneState& state) const;
  StepResult<DroneState> step(const DroneState& state, ActionId action) const;
  /// Position only, so plans reaching a cell by different routes share it.
  std::string state_key(const DroneState& state) const;
  bool is_terminal(const DroneState& state) const { return state.done; }
  ActionId default_action(const DroneState& state, Rng& rng) const;

  const GridWorld& world() const noexcept { return world_; }

 private:
  GridWorld world_;
};

/// With probability 0.8 the legal move closest (Manhattan) to the goal, the
/// lowest action index winning ties; otherwise a uniform legal move.
ActionId default_policy_action(const GridWorld& world, const DroneState& state,
                               Rng& rng);

/// Legal move minimizing Manhattan distance to the goal.
ActionId greedy_action(const GridWorld& world, Cell position);

std::string encode_cell(Cell c);
std::optional<Cell> decode_cell(std::string_view key);

struct ExecutionOutcome {
  bool reached_goal = false;
  bool shot_down = false;
  int path_length = 0;
};

/// Replays `actions` in the true world. Throws invalid-plan on an off-grid move.
ExecutionOutcome execute_plan(const GridWorld& world,
                              const std::vector<ActionId>& actions);

/// BFS distance from start to goal ignoring enemies.
int shortest_unobstructed_path(const GridWorld& world);

/// Rows of '.', 'E', 'S', 'G'; one line per row, top row first.
std::string render_map(const GridWorld& world);
/// Same, overlaying '*' on cells the plan passes through.
std::string render_map(const GridWorld& world,
                       const std::vector<ActionId>& actions);
GridWorld parse_map(std::string_view text, int detection_radius = 0);
GridWorld load_map_file(const std::string& path, int detection_radius = 0);

}  // namespace mcplan::grid
