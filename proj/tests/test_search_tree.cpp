#include <doctest.h>

#include <cmath>

#include "mcplan/error.hpp"
#include "mcplan/search_tree.hpp"
#include "mcplan/tree_io.hpp"
#include "test_support.hpp"

using namespace mcplan;

namespace {

std::vector<ActionId> actions(std::uint32_t n) {
  std::vector<ActionId> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back({i});
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const PlanningError& e) {
    return e.kind();
  }
  FAIL("expected a PlanningError");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("first expansion appends node 1 under the root") {
  SearchTree tree("r", actions(2));
  const NodeId child = tree.add_child(tree.root(), {0}, "s1", false);
  CHECK(child.index == 1);
  REQUIRE(tree.node(tree.root()).children.size() == 1);
  CHECK(tree.node(tree.root()).children[0] == child);
  CHECK(tree.node(child).visits == 0);
  CHECK(tree.node(child).total_reward == 0.0);
  CHECK(tree.node(child).parent == tree.root());
  CHECK(tree.node(child).action == ActionId{0});
  CHECK(tree.node(tree.root()).untried_actions == std::vector<ActionId>{{1}});
  CHECK_FALSE(tree.node(tree.root()).parent.has_value());
}

TEST_CASE("expanding the same action twice is a duplicate edge") {
  SearchTree tree("r", actions(2));
  tree.add_child(tree.root(), {0}, "s1", false);
  CHECK(kind_of([&] { tree.add_child(tree.root(), {0}, "s1", false); }) ==
        ErrorKind::DuplicateEdge);
}

TEST_CASE("action outside the untried list is rejected") {
  SearchTree tree("r", actions(2));
  CHECK(kind_of([&] { tree.add_child(tree.root(), {7}, "x", false); }) ==
        ErrorKind::InvalidAction);
}

TEST_CASE("children keep insertion order") {
  SearchTree tree("r", actions(3));
  const NodeId a = tree.add_child(tree.root(), {2}, "a", false);
  const NodeId b = tree.add_child(tree.root(), {0}, "b", false);
  CHECK(a.index == 1);
  CHECK(b.index == 2);
  CHECK(tree.node(tree.root()).children == std::vector<NodeId>{a, b});
}

TEST_CASE("ids from another tree or out of range are invalid") {
  SearchTree t1("r", actions(1));
  SearchTree t2("r", actions(1));
  CHECK(kind_of([&] { t2.node(t1.root()); }) == ErrorKind::InvalidNode);
  CHECK(kind_of([&] { t1.id_at(5); }) == ErrorKind::InvalidNode);
  CHECK(kind_of([&] { t1.add_child(NodeId{9, t1.root().tree_tag}, {0}, "x", false); }) ==
        ErrorKind::InvalidNode);
  CHECK_FALSE(t2.contains(t1.root()));
}

TEST_CASE("backpropagate updates every node on the path") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false, actions(1));
  const NodeId b = tree.add_child(a, {0}, "b", true);
  tree.backpropagate(b, 1.0);
  for (NodeId id : {tree.root(), a, b}) {
    CHECK(tree.node(id).visits == 1);
    CHECK(tree.node(id).total_reward == 1.0);
  }
}

TEST_CASE("two playouts of 1 and 0 give q-value 0.5") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false);
  tree.backpropagate(a, 1.0);
  tree.backpropagate(a, 0.0);
  CHECK(tree.q_value(a) == doctest::Approx(0.5));
}

TEST_CASE("rewards outside [0, 1] are rejected") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false);
  CHECK(kind_of([&] { tree.backpropagate(a, 1.5); }) == ErrorKind::RewardRange);
  CHECK(kind_of([&] { tree.backpropagate(a, -0.1); }) == ErrorKind::RewardRange);
  CHECK(kind_of([&] { tree.backpropagate(a, std::nan("")); }) == ErrorKind::RewardRange);
  CHECK(tree.node(a).visits == 0);
}

TEST_CASE("average q-value is z over n") {
  SearchTree tree("r", {});
  tree.set_statistics(tree.root(), 4, 3.0);
  CHECK(tree.q_value(tree.root()) == doctest::Approx(0.75));
}

TEST_CASE("max mode takes the best visited child") {
  const SearchTree tree = testing::star_tree({{0.2, 1}, {0.9, 1}}, ValueMode::Max);
  CHECK(tree.q_value(tree.root()) == doctest::Approx(0.9));
  CHECK(tree.mean_value(tree.root()) == doctest::Approx(0.55));
}

TEST_CASE("unvisited node has no q-value") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false);
  CHECK(kind_of([&] { tree.q_value(a); }) == ErrorKind::UndefinedValue);
}

TEST_CASE("best child is the argmax with lowest-index ties") {
  const SearchTree t1 = testing::star_tree({{0.4, 1}, {0.9, 1}, {0.7, 1}});
  CHECK(t1.best_child(t1.root()).index == 2);
  const SearchTree t2 = testing::star_tree({{0.5, 1}, {0.5, 1}});
  CHECK(t2.best_child(t2.root()).index == 1);
  CHECK(kind_of([&] { t2.best_child(t2.id_at(1)); }) == ErrorKind::Leaf);
}

TEST_CASE("unvisited children are ignored by best_child") {
  SearchTree tree("r", actions(2));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false);
  tree.add_child(tree.root(), {1}, "b", false);
  tree.backpropagate(a, 0.1);
  CHECK(tree.best_child(tree.root()) == a);
  CHECK(tree.visited_children(tree.root()) == std::vector<NodeId>{a});
}

TEST_CASE("consistency check") {
  SUBCASE("single node") {
    SearchTree tree("r", {});
    CHECK(tree.check_consistency().empty());
  }
  SUBCASE("backprop-only tree is consistent and a corrupted z is reported") {
    Rng rng(3);
    SearchTree tree = testing::random_tree(rng, {});
    CHECK(tree.check_consistency().empty());
    double child_z = 0.0;
    for (NodeId c : tree.node(tree.root()).children) child_z += tree.node(c).total_reward;
    tree.set_statistics(tree.root(), tree.node(tree.root()).visits, child_z - 0.25);
    CHECK(tree.check_consistency() == std::vector<NodeId>{tree.root()});
  }
  SUBCASE("corrupting an internal node's own total is reported") {
    SearchTree tree("r", actions(1));
    const NodeId a = tree.add_child(tree.root(), {0}, "a", false, actions(1));
    const NodeId b = tree.add_child(a, {0}, "b", false);
    tree.backpropagate(b, 0.5);
    tree.backpropagate(b, 0.25);
    tree.set_statistics(a, 2, 1.5);
    const auto bad = tree.check_consistency();
    CHECK(std::find(bad.begin(), bad.end(), a) != bad.end());
  }
}

TEST_CASE("random backpropagated trees satisfy the visit and value invariants") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    testing::TreeShape shape;
    shape.playouts = 50 + seed % 150;
    shape.mode = seed % 2 ? ValueMode::Max : ValueMode::Average;
    const bool leaf_playouts = seed % 4 < 2;
    const SearchTree tree = leaf_playouts ? testing::leaf_playout_tree(rng, shape)
                                          : testing::random_tree(rng, shape);
    CHECK(tree.check_consistency().empty());
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const NodeId id = tree.id_at(i);
      const NodeRecord& rec = tree.node(id);
      std::uint64_t child_visits = 0;
      for (NodeId c : rec.children) child_visits += tree.node(c).visits;
      CHECK(rec.visits >= child_visits);
      CHECK(rec.total_reward >= 0.0);
      CHECK(rec.total_reward <= static_cast<double>(rec.visits) + 1e-9);
      if (rec.visits == 0) continue;
      const double q = tree.q_value(id);
      CHECK(q == doctest::Approx(testing::reference_q(tree, id)).epsilon(1e-12));
      CHECK(q >= 0.0);
      CHECK(q <= 1.0);
      if (tree.value_mode() == ValueMode::Max && tree.has_visited_children(id)) {
        // The maximum dominates the visit-weighted mean of the child values.
        double weighted = 0.0;
        for (NodeId c : rec.children) {
          if (tree.node(c).visits > 0) {
            weighted += static_cast<double>(tree.node(c).visits) * tree.q_value(c);
          }
        }
        CHECK(q >= weighted / static_cast<double>(child_visits) - 1e-12);
        // Without playouts stopping at internal nodes it also dominates the mean.
        if (leaf_playouts) CHECK(q >= tree.mean_value(id) - 1e-12);
      }
    }
  }
}

TEST_CASE("max values stay current after later backpropagation") {
  SearchTree tree("r", actions(2), false, ValueMode::Max);
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false, actions(1));
  const NodeId b = tree.add_child(tree.root(), {1}, "b", false);
  tree.backpropagate(a, 0.3);
  tree.backpropagate(b, 0.6);
  CHECK(tree.q_value(tree.root()) == doctest::Approx(0.6));
  const NodeId c = tree.add_child(a, {0}, "c", true);
  tree.backpropagate(c, 1.0);
  tree.backpropagate(c, 1.0);
  CHECK(tree.q_value(a) == doctest::Approx(1.0));
  CHECK(tree.q_value(tree.root()) == doctest::Approx(1.0));
}

TEST_CASE("paths, depth and bookkeeping") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, "a", false, actions(1));
  const NodeId b = tree.add_child(a, {0}, "b", false);
  CHECK(tree.depth_of(b) == 2);
  CHECK(tree.path_to(b) == std::vector<NodeId>{tree.root(), a, b});
  CHECK(tree.max_depth() == 0);
  tree.backpropagate(b, 0.5);
  CHECK(tree.max_depth() == 2);
}

TEST_CASE("serialization round-trips exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    testing::TreeShape shape;
    shape.mode = seed % 2 ? ValueMode::Max : ValueMode::Average;
    const SearchTree tree = testing::random_tree(rng, shape);
    const std::string text = serialize_tree(tree);
    const SearchTree copy = parse_tree(text);
    CHECK(serialize_tree(copy) == text);
    CHECK(copy.size() == tree.size());
    CHECK(copy.value_mode() == tree.value_mode());
    CHECK(copy.q_value(copy.root()) == tree.q_value(tree.root()));
  }
}

TEST_CASE("serialized lines carry the documented fields") {
  SearchTree tree("r", actions(1));
  const NodeId a = tree.add_child(tree.root(), {0}, std::string("\x01\xff", 2), true);
  tree.backpropagate(a, 0.1);
  const std::string text = serialize_tree(tree);
  CHECK(text.find("# mcplan-tree v1 value_mode=average\n") == 0);
  CHECK(text.find("0 - - 1 0.10000000000000001 0 72\n") != std::string::npos);
  CHECK(text.find("1 0 0 1 0.10000000000000001 1 01ff\n") != std::string::npos);
}

TEST_CASE("malformed tree text is a parse error") {
  CHECK(kind_of([] { parse_tree("# mcplan-tree v1 value_mode=average\n0 - - x 0 0 -\n"); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] { parse_tree(""); }) == ErrorKind::Parse);
  CHECK(from_hex(to_hex("abc")) == "abc");
}
