#include <doctest.h>

#include "lifetree/oracle.hpp"
#include "test_util.hpp"

using namespace lifetree;
using namespace lifetree::testing;

TEST_CASE("brute force on the diamond finds the half-lifetime optimum") {
  const auto res = brute_force_optimal(diamond(), QueryModel::unaggregated());
  CHECK(res.lifetime == 0.5);
  CHECK(res.trees_seen == 4);  // the diamond is a 4-cycle
  CHECK(res.trees_seen == static_cast<long long>(matrix_tree_count(diamond())));
}

TEST_CASE("tree-shaped graphs have a unique spanning tree") {
  const auto pg = path_graph({5, 3, 7, 2});
  const auto res = brute_force_optimal(pg, QueryModel::unaggregated());
  CHECK(res.trees_seen == 1);
  CHECK(res.tree.parent == std::vector<int>{kNoParent, 0, 1, 2});
  CHECK(res.lifetime == lifetime(res.tree, pg, QueryModel::unaggregated()).lifetime);
}

TEST_CASE("aggregated optimum hangs everything off an unconstrained root") {
  // On a complete graph every node can be a root leaf (degree 1, rate 1);
  // only the root's degree grows and the root never fails.
  const auto g = complete_graph({1000, 1000, 1000, 1000});
  const auto res = brute_force_optimal(g, QueryModel::fully_aggregated(0.5));
  CHECK(res.lifetime == 1000.0);
  CHECK(res.tree.parent == std::vector<int>{kNoParent, 0, 0, 0});
}

TEST_CASE("aggregated optimum is degree limited behind a single gateway") {
  // Root reaches only node 1; the rest form a triangle with it. The best
  // trees are the two chains, whose interior degree of 2 costs rate 1.5.
  const auto g =
      make_graph(4, 0, {1000, 1000, 1000, 1000}, {{0, 1}, {1, 2}, {1, 3}, {2, 3}});
  const auto res = brute_force_optimal(g, QueryModel::fully_aggregated(0.5));
  CHECK(approx(res.lifetime, 1000.0 / 1.5));
}

TEST_CASE("enumeration guards") {
  std::vector<double> e(11, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < 11; ++i) edges.push_back({0, i});
  const auto big = make_graph(11, 0, e, std::move(edges));
  CHECK_THROWS_AS(brute_force_optimal(big, QueryModel::unaggregated()),
                  std::invalid_argument);

  const auto k6 = complete_graph({1, 1, 1, 1, 1, 1});
  EnumerationLimits tight;
  tight.budget = 100;
  CHECK_THROWS_AS(brute_force_optimal(k6, QueryModel::unaggregated(), tight),
                  BudgetExceeded);
}

TEST_CASE("enumeration count matches the matrix-tree determinant") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = random_connected_graph(mix_seed(7, seed), 4, 8);
    long long count = 0;
    enumerate_spanning_trees(g, {}, [&](const RoutingTree&) { ++count; });
    CHECK(count == static_cast<long long>(matrix_tree_count(g) + 0.5));
  }
}

TEST_CASE("emin bound") {
  CHECK(emin_bound(star_graph({1, 400, 1600})) == 400.0);
  CHECK(emin_bound(star_graph({1, 1000, 1000, 1000})) == 1000.0);
  CHECK(emin_bound(path_graph({7, 3})) == 3.0);
}

TEST_CASE("gadget construction matches the five-row layout") {
  SetCoverInstance inst;
  inst.n_elements = 3;
  inst.sets = {{0, 1}, {1, 2}};  // S1 = {1,2}, S2 = {2,3} with 0-based elements
  inst.p = 2;
  const auto g = set_cover_gadget(inst);

  CHECK(g.n == 10);  // root + 2 + k + k + n
  CHECK(g.energy[1] == 3.0);  // 2k - p + 1
  CHECK(g.energy[2] == 6.0);  // p + n + 1
  CHECK(g.energy[3] == 2.0);
  CHECK(g.energy[4] == 2.0);
  CHECK(g.energy[5] == 3.0);  // |S1| + 1
  CHECK(g.energy[6] == 3.0);  // |S2| + 1
  for (int el = 0; el < 3; ++el) CHECK(g.energy[7 + el] == 1.0);

  // Element degree equals the number of sets containing it.
  CHECK(g.adj[7].size() == 1);
  CHECK(g.adj[8].size() == 2);
  CHECK(g.adj[9].size() == 1);

  const auto res =
      brute_force_optimal(g, QueryModel::unaggregated(), {.max_nodes = 16});
  CHECK(approx(res.lifetime, 1.0));
}

TEST_CASE("gadget without a small cover stays below lifetime one") {
  SetCoverInstance inst;
  inst.n_elements = 2;
  inst.sets = {{0}, {1}};
  inst.p = 1;
  CHECK_FALSE(has_cover_of_size(inst));
  const auto res = brute_force_optimal(set_cover_gadget(inst),
                                       QueryModel::unaggregated(), {.max_nodes = 16});
  CHECK(res.lifetime < 1.0);
}

TEST_CASE("gadget rejects malformed instances") {
  SetCoverInstance inst;
  inst.n_elements = 2;
  inst.sets = {{0}};
  inst.p = 1;
  CHECK_THROWS_AS(set_cover_gadget(inst), std::invalid_argument);  // element 1 uncovered
  inst.sets = {{0}, {1}};
  inst.p = 3;
  CHECK_THROWS_AS(set_cover_gadget(inst), std::invalid_argument);
}

TEST_CASE("exhaustive cover search sanity") {
  SetCoverInstance inst;
  inst.n_elements = 3;
  inst.sets = {{0, 1}, {1, 2}, {2}};
  inst.p = 2;
  CHECK(has_cover_of_size(inst));
  inst.p = 1;
  CHECK_FALSE(has_cover_of_size(inst));
}
