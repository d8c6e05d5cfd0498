#include "mcplan/drone_gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

#include "mcplan/error.hpp"

namespace mcplan::grid {
namespace {

constexpr int kDx[kMoveCount] = {0, 1, 0, -1};
constexpr int kDy[kMoveCount] = {-1, 0, 1, 0};

int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

}  // namespace

ActionId to_action(Move move) noexcept {
  return ActionId{static_cast<std::uint32_t>(move)};
}

Cell apply(Cell cell, ActionId action) {
  if (action.index >= kMoveCount) {
    throw PlanningError(ErrorKind::InvalidAction,
                        "no move with index " + std::to_string(action.index));
  }
  return {cell.x + kDx[action.index], cell.y + kDy[action.index]};
}

char move_letter(ActionId action) {
  static constexpr char kLetters[] = "NESW";
  return action.index < kMoveCount ? kLetters[action.index] : '?';
}

std::string format_moves(const std::vector<ActionId>& actions) {
  std::string out;
  out.reserve(actions.size());
  for (ActionId a : actions) out.push_back(move_letter(a));
  return out;
}

GridWorld::GridWorld(int width, int height, Cell start, Cell goal,
                     std::vector<Cell> enemies, int detection_radius)
    : width_(width),
      height_(height),
      start_(start),
      goal_(goal),
      enemies_(std::move(enemies)),
      detection_radius_(detection_radius) {
  if (width < 2 || height < 2) {
    throw PlanningError(ErrorKind::InvalidGeometry,
                        "grid must be at least 2x2");
  }
  if (!in_bounds(start) || !in_bounds(goal) || start == goal) {
    throw PlanningError(ErrorKind::InvalidGeometry,
                        "start and goal must be distinct in-bounds cells");
  }
  if (detection_radius < 0) {
    throw PlanningError(ErrorKind::InvalidGeometry,
                        "detection radius must be >= 0");
  }
  std::sort(enemies_.begin(), enemies_.end());
  enemies_.erase(std::unique(enemies_.begin(), enemies_.end()), enemies_.end());
  const auto cells = static_cast<std::size_t>(width) * height;
  enemy_mask_.assign(cells, false);
  danger_mask_.assign(cells, false);
  for (Cell e : enemies_) {
    if (!in_bounds(e) || e == start || e == goal) {
      throw PlanningError(ErrorKind::InvalidGeometry,
                          "enemies must be in bounds and off start/goal");
    }
    enemy_mask_[index(e)] = true;
    for (int dy = -detection_radius; dy <= detection_radius; ++dy) {
      for (int dx = -detection_radius; dx <= detection_radius; ++dx) {
        const Cell c{e.x + dx, e.y + dy};
        if (in_bounds(c)) danger_mask_[index(c)] = true;
      }
    }
  }
}

double GridWorld::risk() const noexcept {
  return static_cast<double>(enemies_.size()) /
         static_cast<double>(width_ * height_ - 2);
}

bool GridWorld::in_bounds(Cell c) const noexcept {
  return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
}

std::size_t GridWorld::index(Cell c) const noexcept {
  return static_cast<std::size_t>(c.y) * width_ + c.x;
}

bool GridWorld::is_enemy(Cell c) const noexcept {
  return in_bounds(c) && enemy_mask_[index(c)];
}

bool GridWorld::is_detected(Cell c) const noexcept {
  return in_bounds(c) && danger_mask_[index(c)];
}

GridWorld GridWorld::with_detection_radius(int radius) const {
  return GridWorld(width_, height_, start_, goal_, enemies_, radius);
}

GridWorld generate_instance(int width, int height, double risk, Rng& rng,
                            int detection_radius) {
  if (width < 2 || height < 2) {
    throw PlanningError(ErrorKind::InvalidGeometry,
                        "grid must be at least 2x2");
  }
  if (!(risk >= 0.0 && risk <= 1.0)) {
    throw PlanningError(ErrorKind::Config, "risk must lie in [0, 1]");
  }
  const Cell start{0, height / 2};
  const Cell goal{width - 1, height / 2};
  std::vector<Cell> candidates;
  candidates.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Cell c{x, y};
      if (c != start && c != goal) candidates.push_back(c);
    }
  }
  const auto count = static_cast<std::size_t>(
      std::lround(risk * static_cast<double>(candidates.size())));
  std::shuffle(candidates.begin(), candidates.end(), rng);
  candidates.resize(count);
  return GridWorld(width, height, start, goal, std::move(candidates),
                   detection_radius);
}

std::string encode_cell(Cell c) {
  std::string key(4, '\0');
  key[0] = static_cast<char>(c.x & 0xFF);
  key[1] = static_cast<char>((c.x >> 8) & 0xFF);
  key[2] = static_cast<char>(c.y & 0xFF);
  key[3] = static_cast<char>((c.y >> 8) & 0xFF);
  return key;
}

std::optional<Cell> decode_cell(std::string_view key) {
  if (key.size() != 4) return std::nullopt;
  auto byte = [&](std::size_t i) {
    return static_cast<int>(static_cast<unsigned char>(key[i]));
  };
  return Cell{byte(0) | (byte(1) << 8), byte(2) | (byte(3) << 8)};
}

PlanningSimulator::PlanningSimulator(const GridWorld& world)
    : world_(world.width(), world.height(), world.start(), world.goal(), {},
             world.detection_radius()) {}

DroneState PlanningSimulator::initial_state() const {
  return DroneState{world_.start(), 0, false};
}

std::vector<ActionId> PlanningSimulator::legal_actions(
    const DroneState& state) const {
  std::vector<ActionId> out;
  if (state.done) return out;
  out.reserve(kMoveCount);
  for (std::uint32_t a = 0; a < kMoveCount; ++a) {
    if (world_.in_bounds(apply(state.position, ActionId{a}))) {
      out.push_back(ActionId{a});
    }
  }
  return out;
}

StepResult<DroneState> PlanningSimulator::step(const DroneState& state,
                                               ActionId action) const {
  if (state.done) return {state, 0.0, true};
  const Cell next = apply(state.position, action);
  if (!world_.in_bounds(next)) {
    throw PlanningError(ErrorKind::InvalidAction, "move leaves the grid");
  }
  DroneState out{next, state.steps_taken + 1, false};
  if (next == world_.goal()) {
    out.done = true;
    return {out, std::pow(kDiscount, out.steps_taken), true};
  }
  if (out.steps_taken >= world_.horizon()) {
    out.done = true;
    return {out, 0.0, true};
  }
  return {out, 0.0, false};
}

std::string PlanningSimulator::state_key(const DroneState& state) const {
  return encode_cell(state.position);
}

ActionId PlanningSimulator::default_action(const DroneState& state,
                                           Rng& rng) const {
  return default_policy_action(world_, state, rng);
}

ActionId greedy_action(const GridWorld& world, Cell position) {
  std::optional<ActionId> best;
  int best_distance = 0;
  for (std::uint32_t a = 0; a < kMoveCount; ++a) {
    const Cell next = apply(position, ActionId{a});
    if (!world.in_bounds(next)) continue;
    const int distance = manhattan(next, world.goal());
    if (!best || distance < best_distance) {
      best = ActionId{a};
      best_distance = distance;
    }
  }
  return *best;
}

ActionId default_policy_action(const GridWorld& world, const DroneState& state,
                               Rng& rng) {
  std::bernoulli_distribution greedy(kGreedyProbability);
  if (greedy(rng)) return greedy_action(world, state.position);
  std::vector<ActionId> legal;
  for (std::uint32_t a = 0; a < kMoveCount; ++a) {
    if (world.in_bounds(apply(state.position, ActionId{a}))) {
      legal.push_back(ActionId{a});
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
  return legal[pick(rng)];
}

ExecutionOutcome execute_plan(const GridWorld& world,
                              const std::vector<ActionId>& actions) {
  ExecutionOutcome outcome;
  Cell position = world.start();
  for (ActionId action : actions) {
    const Cell next = apply(position, action);
    if (!world.in_bounds(next)) {
      throw PlanningError(ErrorKind::InvalidPlan,
                          "step " + std::to_string(outcome.path_length) +
                              " leaves the grid");
    }
    position = next;
    ++outcome.path_length;
    if (world.is_detected(position)) {
      outcome.shot_down = true;
      break;
    }
    if (position == world.goal()) {
      outcome.reached_goal = true;
      break;
    }
  }
  return outcome;
}

int shortest_unobstructed_path(const GridWorld& world) {
  const int w = world.width();
  std::vector<int> dist(static_cast<std::size_t>(w) * world.height(), -1);
  auto idx = [w](Cell c) { return static_cast<std::size_t>(c.y) * w + c.x; };
  std::queue<Cell> frontier;
  frontier.push(world.start());
  dist[idx(world.start())] = 0;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    if (c == world.goal()) return dist[idx(c)];
    for (std::uint32_t a = 0; a < kMoveCount; ++a) {
      const Cell n = apply(c, ActionId{a});
      if (world.in_bounds(n) && dist[idx(n)] < 0) {
        dist[idx(n)] = dist[idx(c)] + 1;
        frontier.push(n);
      }
    }
  }
  return -1;
}

std::string render_map(const GridWorld& world) { return render_map(world, {}); }

std::string render_map(const GridWorld& world,
                       const std::vector<ActionId>& actions) {
  std::vector<std::string> rows(world.height(), std::string(world.width(), '.'));
  for (Cell e : world.enemies()) rows[e.y][e.x] = 'E';
  Cell position = world.start();
  for (ActionId a : actions) {
    position = apply(position, a);
    if (!world.in_bounds(position)) break;
    if (rows[position.y][position.x] == '.') rows[position.y][position.x] = '*';
  }
  rows[world.start().y][world.start().x] = 'S';
  rows[world.goal().y][world.goal().x] = 'G';
  std::string out;
  for (const std::string& row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

GridWorld parse_map(std::string_view text, int detection_radius) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(line);
  }
  if (rows.empty()) throw PlanningError(ErrorKind::Parse, "empty map");
  const auto width = rows.front().size();
  std::optional<Cell> start, goal;
  std::vector<Cell> enemies;
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      throw PlanningError(ErrorKind::Parse,
                          "map row " + std::to_string(y) + " has wrong width");
    }
    for (std::size_t x = 0; x < width; ++x) {
      const Cell c{static_cast<int>(x), static_cast<int>(y)};
      switch (rows[y][x]) {
        case '.': break;
        case 'E': enemies.push_back(c); break;
        case 'S':
          if (start) throw PlanningError(ErrorKind::Parse, "two start cells");
          start = c;
          break;
        case 'G':
          if (goal) throw PlanningError(ErrorKind::Parse, "two goal cells");
          goal = c;
          break;
        default:
          throw PlanningError(ErrorKind::Parse,
                              std::string("unexpected map character '") +
                                  rows[y][x] + "'");
      }
    }
  }
  if (!start || !goal) {
    throw PlanningError(ErrorKind::Parse, "map needs one 'S' and one 'G'");
  }
  return GridWorld(static_cast<int>(width), static_cast<int>(rows.size()),
                   *start, *goal, std::move(enemies), detection_radius);
}

GridWorld load_map_file(const std::string& path, int detection_radius) {
  std::ifstream in(path);
  if (!in) throw PlanningError(ErrorKind::Io, "cannot open map file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_map(buffer.str(), detection_radius);
}

}  // namespace mcplan::grid
