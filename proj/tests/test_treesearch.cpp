#include <doctest.h>

#include "lifetree/oracle.hpp"
#include "lifetree/treesearch.hpp"
#include "test_util.hpp"

using namespace lifetree;
using namespace lifetree::testing;

TEST_CASE("min-hop tree on the diamond and a path") {
  const auto dg = diamond();
  const auto t = min_hop_tree(dg);
  CHECK(t.parent == std::vector<int>{kNoParent, 0, 0, 1});  // d ties to lower id

  const auto pg = path_graph({1, 1, 1, 1});
  CHECK(min_hop_tree(pg).parent == std::vector<int>{kNoParent, 0, 1, 2});
}

TEST_CASE("min-hop parents always reduce the hop count by one") {
  // 3x3 grid rooted at a corner.
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) edges.push_back({3 * r + c, 3 * r + c + 1});
      if (r + 1 < 3) edges.push_back({3 * r + c, 3 * (r + 1) + c});
    }
  const auto grid = make_graph(9, 0, std::vector<double>(9, 1.0), std::move(edges));
  const auto t = min_hop_tree(grid);
  auto hops = [&](int v) { return v / 3 + v % 3; };  // manhattan distance to corner
  for (int v = 1; v < 9; ++v) CHECK(hops(t.parent[v]) == hops(v) - 1);
}

TEST_CASE("min-hop random tie-break is seeded and valid") {
  const auto g = random_connected_graph(4242, 8, 8);
  const auto a = min_hop_tree(g, TieBreak::Random, 5);
  const auto b = min_hop_tree(g, TieBreak::Random, 5);
  const auto c = min_hop_tree(g, TieBreak::Random, 6);
  CHECK(a.parent == b.parent);
  CHECK(validate_tree(a, g).empty());
  CHECK(validate_tree(c, g).empty());

  // Hop distances are unchanged by the tie-break.
  const auto ref = min_hop_tree(g);
  auto depth_of = [&](const RoutingTree& t, int v) {
    int d = 0;
    for (int x = v; x != t.root; x = t.parent[x]) ++d;
    return d;
  };
  for (int v = 0; v < g.n; ++v) CHECK(depth_of(a, v) == depth_of(ref, v));
}

TEST_CASE("ecrt reaches the diamond optimum and keeps stars") {
  const auto dg = diamond();
  SearchTrace trace;
  const auto t = ecrt(dg, QueryModel::unaggregated(), &trace);
  CHECK(validate_tree(t, dg).empty());
  CHECK(lifetime(t, dg, QueryModel::unaggregated()).lifetime == 0.5);
  REQUIRE(trace.steps.size() == 3);  // N-1 attachments
  for (std::size_t i = 1; i < trace.steps.size(); ++i)
    CHECK(trace.steps[i].lifetime <= trace.steps[i - 1].lifetime);

  const auto st = star_graph({1, 700, 400, 900});
  const auto stree = ecrt(st, QueryModel::unaggregated());
  CHECK(lifetime(stree, st, QueryModel::unaggregated()).lifetime == 400.0);
}

TEST_CASE("ecrt rejects aggregated queries and disconnected graphs") {
  CHECK_THROWS_AS(ecrt(diamond(), QueryModel::fully_aggregated(0.5)),
                  std::invalid_argument);
  const auto split = make_graph(3, 0, {1, 1, 1}, {{0, 1}});
  CHECK_THROWS_AS(ecrt(split, QueryModel::unaggregated()), std::invalid_argument);
}

TEST_CASE("ecrt never beats the exhaustive optimum") {
  int optimal_hits = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_connected_graph(mix_seed(31, seed), 4, 8);
    const auto t = ecrt(g, QueryModel::unaggregated());
    CHECK(validate_tree(t, g).empty());
    const double life = lifetime(t, g, QueryModel::unaggregated()).lifetime;
    const auto opt = brute_force_optimal(g, QueryModel::unaggregated());
    CHECK(life <= opt.lifetime * (1 + 1e-12));
    optimal_hits += approx(life, opt.lifetime);
  }
  MESSAGE("ecrt matched the optimum on " << optimal_hits << "/40 instances");
  CHECK(optimal_hits > 0);
}

TEST_CASE("local opt fixes the deliberately bad diamond chain") {
  const auto dg = diamond();
  RoutingTree bad;
  bad.root = 0;
  bad.parent = {kNoParent, 0, 3, 1};  // root-a-d-b chain
  CHECK(lifetime(bad, dg, QueryModel::unaggregated()).lifetime ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  SearchTrace trace;
  const auto t = local_opt(dg, bad, QueryModel::unaggregated(), &trace);
  CHECK(lifetime(t, dg, QueryModel::unaggregated()).lifetime == 0.5);
  REQUIRE(trace.steps.size() == 1);  // single parent switch: b moves to the root
  CHECK(trace.steps[0].node == 2);
  CHECK_FALSE(trace.capped);
}

TEST_CASE("local opt is a fixed point on locally optimal input") {
  const auto dg = diamond();
  RoutingTree opt;
  opt.root = 0;
  opt.parent = {kNoParent, 0, 0, 1};
  SearchTrace trace;
  const auto t = local_opt(dg, opt, QueryModel::unaggregated(), &trace);
  CHECK(t.parent == opt.parent);
  CHECK(trace.steps.empty());
}

TEST_CASE("local opt improves min-hop and never beats the oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_connected_graph(mix_seed(32, seed), 4, 8);
    const auto t0 = min_hop_tree(g);
    const double before = lifetime(t0, g, QueryModel::unaggregated()).lifetime;
    SearchTrace trace;
    const auto t = local_opt(g, t0, QueryModel::unaggregated(), &trace);
    CHECK(validate_tree(t, g).empty());
    const double after = lifetime(t, g, QueryModel::unaggregated()).lifetime;
    CHECK(after >= before);
    // Accepted switches never lower the lifetime; plateau steps hold it.
    for (std::size_t i = 1; i < trace.steps.size(); ++i)
      CHECK(trace.steps[i].lifetime >= trace.steps[i - 1].lifetime * (1 - 1e-12));

    const auto opt = brute_force_optimal(g, QueryModel::unaggregated());
    CHECK(after <= opt.lifetime * (1 + 1e-12));
  }
}

TEST_CASE("no single parent switch improves a local optimum") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = random_connected_graph(mix_seed(33, seed), 4, 7);
    const auto model = QueryModel::unaggregated();
    const auto t = local_opt(g, min_hop_tree(g), model);
    const double life = lifetime(t, g, model).lifetime;

    auto in_subtree = [&](int u, int v) {
      for (int x = u;; x = t.parent[x]) {
        if (x == v) return true;
        if (x == t.root) return false;
      }
    };
    for (int v = 0; v < g.n; ++v) {
      if (v == g.root) continue;
      for (int u : g.adj[v]) {
        if (u == t.parent[v] || in_subtree(u, v)) continue;
        RoutingTree alt = t;
        alt.parent[v] = u;
        REQUIRE(validate_tree(alt, g).empty());
        CHECK(lifetime(alt, g, model).lifetime <= life * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("partially aggregated flows drive both heuristics") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = random_connected_graph(mix_seed(34, seed), 5, 8);
    const auto model = QueryModel::partially_aggregated(3);
    const auto te = ecrt(g, model);
    const auto tl = local_opt(g, min_hop_tree(g), model);
    CHECK(validate_tree(te, g).empty());
    CHECK(validate_tree(tl, g).empty());
    const auto opt = brute_force_optimal(g, model);
    CHECK(lifetime(te, g, model).lifetime <= opt.lifetime * (1 + 1e-12));
    CHECK(lifetime(tl, g, model).lifetime <= opt.lifetime * (1 + 1e-12));
  }
}

TEST_CASE("fully aggregated local opt unloads an overloaded hub") {
  const auto g = complete_graph({1000, 1000, 1000, 1000, 1000});
  RoutingTree hub;  // everything routes through node 1
  hub.root = 0;
  hub.parent = {kNoParent, 0, 1, 1, 1};
  const auto model = QueryModel::fully_aggregated(0.5);
  CHECK(lifetime(hub, g, model).lifetime == 400.0);  // degree 4 at node 1
  const auto t = local_opt(g, hub, model);
  CHECK(validate_tree(t, g).empty());
  CHECK(lifetime(t, g, model).lifetime == 1000.0);  // every node a root leaf
}

TEST_CASE("pipeline polishes the greedy tree") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_connected_graph(mix_seed(35, seed), 5, 8);
    const auto model = QueryModel::unaggregated();
    const double greedy = lifetime(ecrt(g, model), g, model).lifetime;
    const double polished = lifetime(ecrt_local_opt(g, model), g, model).lifetime;
    CHECK(polished >= greedy);
  }
}
