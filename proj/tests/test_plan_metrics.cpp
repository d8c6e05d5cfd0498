#include <doctest.h>

#include <cmath>

#include "mcplan/error.hpp"
#include "mcplan/plan_metrics.hpp"
#include "test_support.hpp"

using namespace mcplan;

namespace {

Plan keys_plan(std::vector<std::string> keys) {
  Plan p;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  p.state_keys = std::move(keys);
  return p;
}

// root -> {a (Q 0.8) -> {a0 (0.6), a1 (0.3)}, b (Q 0.4) -> {b0 (0.2)}}
struct TwoLevel {
  SearchTree tree{"r", {{0}, {1}}};
  NodeId a, b, a0, a1, b0;
  TwoLevel() {
    a = tree.add_child(tree.root(), {0}, "a", false, {{0}, {1}});
    b = tree.add_child(tree.root(), {1}, "b", false, {{0}});
    a0 = tree.add_child(a, {0}, "a0", true);
    a1 = tree.add_child(a, {1}, "a1", true);
    b0 = tree.add_child(b, {0}, "b0", true);
    tree.set_statistics(a0, 10, 6.0);
    tree.set_statistics(a1, 10, 3.0);
    tree.set_statistics(a, 20, 16.0);
    tree.set_statistics(b0, 10, 2.0);
    tree.set_statistics(b, 10, 4.0);
    tree.set_statistics(tree.root(), 30, 20.0);
  }
};

}  // namespace

TEST_CASE("relative quality of the best-child path is 1") {
  TwoLevel t;
  const std::vector<NodeId> best{t.tree.root(), t.a, t.a0};
  CHECK(relative_plan_quality(t.tree, best) == 1.0);
  const std::vector<NodeId> root_only{t.tree.root()};
  CHECK(relative_plan_quality(t.tree, root_only) == 1.0);
}

TEST_CASE("one-step ratio 0.6 / 0.8") {
  const SearchTree tree = testing::star_tree({{0.6, 1}, {0.8, 1}});
  const std::vector<NodeId> path{tree.root(), tree.id_at(1)};
  CHECK(relative_plan_quality(tree, path) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("two steps of ratio 0.5 multiply to 0.25") {
  TwoLevel t;
  // b / a = 0.5, b0 is b's only child (ratio 1); a1 / a0 = 0.5.
  const std::vector<NodeId> p1{t.tree.root(), t.b, t.b0};
  CHECK(relative_plan_quality(t.tree, p1) == doctest::Approx(0.5));
  const std::vector<NodeId> p2{t.tree.root(), t.a, t.a1};
  CHECK(relative_plan_quality(t.tree, p2) == doctest::Approx(0.5));

  SearchTree tree("r", {{0}, {1}});
  const NodeId x = tree.add_child(tree.root(), {0}, "x", false, {{0}, {1}});
  const NodeId y = tree.add_child(tree.root(), {1}, "y", false);
  const NodeId x0 = tree.add_child(x, {0}, "x0", true);
  const NodeId x1 = tree.add_child(x, {1}, "x1", true);
  tree.set_statistics(x0, 1, 0.2);
  tree.set_statistics(x1, 1, 0.4);
  tree.set_statistics(x, 2, 0.6);
  tree.set_statistics(y, 1, 0.6);
  tree.set_statistics(tree.root(), 3, 1.2);
  const std::vector<NodeId> path{tree.root(), x, x0};
  CHECK(relative_plan_quality(tree, path) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("zero denominators contribute 1 and zero numerators give 0") {
  const SearchTree dead = testing::star_tree({{0.0, 1}, {0.0, 2}});
  const std::vector<NodeId> p{dead.root(), dead.id_at(2)};
  CHECK(relative_plan_quality(dead, p) == 1.0);
  const SearchTree mixed = testing::star_tree({{0.0, 1}, {0.5, 1}});
  const std::vector<NodeId> z{mixed.root(), mixed.id_at(1)};
  CHECK(relative_plan_quality(mixed, z) == 0.0);
  CHECK(std::isinf(log_step_factor(mixed, mixed.root(), mixed.id_at(1))));
}

TEST_CASE("non-paths are invalid plans") {
  TwoLevel t;
  auto kind = [&](std::vector<NodeId> nodes) {
    try {
      relative_plan_quality(t.tree, nodes);
    } catch (const PlanningError& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  CHECK(kind({}) == ErrorKind::InvalidPlan);
  CHECK(kind({t.a, t.a0}) == ErrorKind::InvalidPlan);
  CHECK(kind({t.tree.root(), t.a, t.b0}) == ErrorKind::InvalidPlan);

  SearchTree tree("r", {{0}});
  const NodeId c = tree.add_child(tree.root(), {0}, "c", false);
  tree.set_statistics(tree.root(), 1, 0.5);
  const std::vector<NodeId> unvisited{tree.root(), c};
  CHECK_THROWS_AS(relative_plan_quality(tree, unvisited), PlanningError);
}

TEST_CASE("absolute quality") {
  const SearchTree tree = testing::star_tree({{0.7, 1}});
  CHECK(absolute_quality(tree, 1.0) == doctest::Approx(0.7));
  CHECK(absolute_quality(tree, 0.0) == 0.0);
  const SearchTree t8 = testing::star_tree({{0.8, 1}});
  CHECK(absolute_quality(t8, 0.75) == doctest::Approx(0.6));
}

TEST_CASE("make_plan materializes actions, keys and qualities") {
  TwoLevel t;
  const Plan p = make_plan(t.tree, {t.tree.root(), t.a, t.a1});
  CHECK(p.actions == std::vector<ActionId>{{0}, {1}});
  CHECK(p.state_keys == std::vector<std::string>{"a", "a1"});
  CHECK(p.relative_quality == doctest::Approx(0.5));
  CHECK(p.absolute_quality == doctest::Approx(0.5 * 20.0 / 30.0));
}

TEST_CASE("state-set distance") {
  const Plan p = keys_plan({"a", "b", "c", "d"});
  CHECK(state_set_distance(p, p) == 0.0);
  CHECK(state_set_distance(p, keys_plan({"x", "y"})) == 1.0);
  CHECK(state_set_distance(p, keys_plan({"a", "b", "x"})) == doctest::Approx(0.5));
  // One-way: the reverse direction differs.
  CHECK(state_set_distance(keys_plan({"a", "b", "x"}), p) == doctest::Approx(1.0 / 3.0));
  try {
    state_set_distance(Plan{}, p);
    FAIL("empty plans have no distance");
  } catch (const PlanningError& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePlan);
  }
}

TEST_CASE("min pairwise diversity") {
  const Plan p = keys_plan({"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
  CHECK(min_pairwise_diversity(p, PlanSet{}) == 1.0);
  PlanSet with_self;
  with_self.plans = {keys_plan({"x"}), p};
  CHECK(min_pairwise_diversity(p, with_self) == 0.0);
  PlanSet two;
  two.plans = {keys_plan({"a", "b", "c", "d", "e", "f", "g"}),  // 0.3 away
               keys_plan({"a", "b", "c"})};                     // 0.7 away
  CHECK(min_pairwise_diversity(p, two) == doctest::Approx(0.3));
}

TEST_CASE("metric properties on random trees") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    testing::TreeShape shape;
    shape.playouts = 30 + seed % 200;
    shape.mode = seed % 3 == 0 ? ValueMode::Max : ValueMode::Average;
    const SearchTree tree = testing::random_tree(rng, shape);
    const auto plans = testing::reference_enumerate(tree);
    for (const auto& ref : plans) {
      const double q = relative_plan_quality(tree, ref.nodes);
      CHECK(q == doctest::Approx(ref.quality).epsilon(1e-12));
      CHECK(q >= 0.0);
      CHECK(q <= 1.0 + 1e-12);
      // Every prefix is at least as good.
      for (std::size_t len = 1; len < ref.nodes.size(); ++len) {
        const std::span<const NodeId> prefix(ref.nodes.data(), len);
        CHECK(relative_plan_quality(tree, prefix) >= q - 1e-12);
      }
    }
    // Extending any stem by its best child keeps its quality.
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const NodeId id = tree.id_at(i);
      if (tree.node(id).visits == 0 || !tree.has_visited_children(id)) continue;
      auto stem = tree.path_to(id);
      const double before = relative_plan_quality(tree, stem);
      stem.push_back(tree.best_child(id));
      CHECK(relative_plan_quality(tree, stem) == doctest::Approx(before).epsilon(1e-12));
    }
    // Diversity matches the set-based reference and self-distance is 0.
    for (std::size_t i = 0; i + 1 < plans.size() && i < 10; ++i) {
      const Plan a = make_plan(tree, plans[i].nodes);
      const Plan b = make_plan(tree, plans[i + 1].nodes);
      CHECK(state_set_distance(a, b) ==
            doctest::Approx(testing::reference_distance(testing::key_set(tree, a.nodes),
                                                        testing::key_set(tree, b.nodes))));
      PlanSet set;
      set.plans = {b, a};
      CHECK(min_pairwise_diversity(a, set) == 0.0);
    }
  }
}
