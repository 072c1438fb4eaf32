#include <doctest.h>

#include <algorithm>

#include "lifetree/json_io.hpp"
#include "lifetree/oracle.hpp"
#include "lifetree/routing_tree.hpp"
#include "test_util.hpp"

using namespace lifetree;
using namespace lifetree::testing;

namespace {

RoutingTree diamond_optimal_tree() {  // 1 -> 0, 2 -> 0, 3 -> 1
  RoutingTree t;
  t.root = 0;
  t.parent = {kNoParent, 0, 0, 1};
  return t;
}

}  // namespace

TEST_CASE("validate_tree accepts a path and names violations") {
  const auto pg = path_graph({1, 1, 1});
  RoutingTree t;
  t.root = 0;
  t.parent = {kNoParent, 0, 1};
  CHECK(validate_tree(t, pg).empty());

  RoutingTree far = t;
  far.parent = {kNoParent, 2, 1};  // (1,2) is an edge but creates 1<->2 cycle
  const auto cyc = validate_tree(far, pg);
  REQUIRE_FALSE(cyc.empty());
  CHECK(cyc.front().find("cycle") != std::string::npos);

  const auto dg = diamond();
  RoutingTree skip;
  skip.root = 0;
  skip.parent = {kNoParent, 0, 0, 0};  // (3,0) is not an edge
  const auto bad = validate_tree(skip, dg);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().find("non-edge parent") != std::string::npos);

  RoutingTree orphan;
  orphan.root = 0;
  orphan.parent = {kNoParent, 0, kNoParent, 1};
  CHECK_FALSE(validate_tree(orphan, dg).empty());
}

TEST_CASE("outflows per query model") {
  const auto t = diamond_optimal_tree();
  const auto unagg = outflows(t, QueryModel::unaggregated());
  CHECK(unagg == std::vector<double>{0, 2, 1, 1});

  const auto full = outflows(t, QueryModel::fully_aggregated(0.5));
  CHECK(full == std::vector<double>{0, 1, 1, 1});

  RoutingTree chain;  // root - a - b - c
  chain.root = 0;
  chain.parent = {kNoParent, 0, 1, 2};
  const auto capped = outflows(chain, QueryModel::partially_aggregated(2));
  CHECK(capped == std::vector<double>{0, 2, 2, 1});
}

TEST_CASE("lifetime for the diamond and a chain") {
  const auto dg = diamond();
  const auto rep = lifetime(diamond_optimal_tree(), dg, QueryModel::unaggregated());
  CHECK(rep.lifetime == 0.5);
  CHECK(rep.bottleneck == 1);
  CHECK(rep.depth == 2);

  const auto pg = path_graph({1000, 1000, 1000});
  RoutingTree chain;
  chain.root = 0;
  chain.parent = {kNoParent, 0, 1};
  const auto agg = lifetime(chain, pg, QueryModel::fully_aggregated(0.5));
  CHECK(agg.rate[1] == 1.5);
  CHECK(approx(agg.lifetime, 1000.0 / 1.5));
  CHECK(agg.bottleneck == 1);

  // Receive-inclusive flow rate: f(1+c_r) - c_r.
  const auto rx = lifetime(diamond_optimal_tree(), dg, QueryModel::unaggregated(true, 0.5));
  CHECK(rx.rate[1] == 2.5);
  CHECK(rx.rate[2] == 1.0);
  CHECK(rx.lifetime == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("zero receive cost makes every spanning tree optimal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_connected_graph(mix_seed(1, seed));
    const auto t = random_spanning_tree(g, seed);
    const auto rep = lifetime(t, g, QueryModel::fully_aggregated(0.0));
    CHECK(rep.lifetime == emin_bound(g));  // exact: every rate is 1
  }
}

TEST_CASE("ip feasibility of the diamond optimum") {
  const auto dg = diamond();
  const auto t = diamond_optimal_tree();
  CHECK(verify_ip_feasibility(t, dg, 0.5).empty());

  const auto bad = verify_ip_feasibility(t, dg, 0.6);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().find("capacity") != std::string::npos);
  CHECK(bad.front().find("node 1") != std::string::npos);

  const auto star = star_graph({1, 4, 2, 3});
  RoutingTree st;
  st.root = 0;
  st.parent = {kNoParent, 0, 0, 0};
  CHECK(verify_ip_feasibility(st, star, emin_bound(star)).empty());
}

TEST_CASE("flow conservation on random trees") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_connected_graph(mix_seed(2, seed));
    const auto t = random_spanning_tree(g, seed);
    const auto f = outflows(t, QueryModel::unaggregated());
    const auto ch = children_of(t);
    double to_root = 0.0;
    for (int c : ch[g.root]) to_root += f[c];
    CHECK(to_root == g.n - 1);
    for (int v = 0; v < g.n; ++v) {
      if (v == g.root) continue;
      double in = 0.0;
      for (int c : ch[v]) in += f[c];
      CHECK(f[v] == in + 1.0);
    }
  }
}

TEST_CASE("partial aggregation degenerates to the extremes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_connected_graph(mix_seed(3, seed));
    const auto t = random_spanning_tree(g, seed);
    CHECK(outflows(t, QueryModel::partially_aggregated(g.n)) ==
          outflows(t, QueryModel::unaggregated()));
    const auto ones = outflows(t, QueryModel::partially_aggregated(1));
    for (int v = 0; v < g.n; ++v)
      if (v != g.root) CHECK(ones[v] == 1.0);
  }
}

TEST_CASE("lifetime never exceeds the minimum energy and drops with energy") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_connected_graph(mix_seed(4, seed));
    const auto t = random_spanning_tree(g, seed);
    for (const auto& model :
         {QueryModel::unaggregated(), QueryModel::fully_aggregated(0.5),
          QueryModel::partially_aggregated(3), QueryModel::unaggregated(true, 0.5)}) {
      const double base = lifetime(t, g, model).lifetime;
      CHECK(base <= emin_bound(g) * (1 + 1e-12));

      auto poorer = g;
      Rng rng(seed);
      int v = 0;
      do v = static_cast<int>(rng.below(g.n)); while (v == g.root);
      poorer.energy[v] *= 0.5;
      CHECK(lifetime(t, poorer, model).lifetime <= base * (1 + 1e-12));
    }
  }
}

TEST_CASE("tree json round trip") {
  const auto t = diamond_optimal_tree();
  const auto back = tree_from_json(tree_to_json(t));
  CHECK(back.root == t.root);
  CHECK(back.parent == t.parent);
  CHECK(tree_to_json(back) == tree_to_json(t));
}
