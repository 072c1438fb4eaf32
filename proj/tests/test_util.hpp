// Shared fixtures and independent reference oracles for the test suites.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "lifetree/graph.hpp"
#include "lifetree/oracle.hpp"
#include "lifetree/rng.hpp"
#include "lifetree/routing_tree.hpp"
#include "lifetree/topology.hpp"

namespace lifetree::testing {

inline bool approx(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Root 0; nodes 1 and 2 adjacent to the root; node 3 adjacent to 1 and 2.
inline NetworkGraph diamond(std::vector<double> energy = {1, 1, 1, 1}) {
  return make_graph(4, 0, std::move(energy), {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

inline NetworkGraph path_graph(const std::vector<double>& energy) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < static_cast<int>(energy.size()); ++i) edges.push_back({i, i + 1});
  return make_graph(static_cast<int>(energy.size()), 0, energy, std::move(edges));
}

inline NetworkGraph star_graph(const std::vector<double>& energy) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < static_cast<int>(energy.size()); ++i) edges.push_back({0, i});
  return make_graph(static_cast<int>(energy.size()), 0, energy, std::move(edges));
}

inline NetworkGraph complete_graph(const std::vector<double>& energy) {
  const int n = static_cast<int>(energy.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return make_graph(n, 0, energy, std::move(edges));
}

// Random connected disk graph with uniform random energies; resamples the
// placement until connected.
inline NetworkGraph random_connected_graph(std::uint64_t seed, int n_min = 4,
                                           int n_max = 8, double alpha = 4.0) {
  Rng pick(seed);
  const int n = pick.uniform_int(n_min, n_max);
  const double r = 1.2 + pick.uniform01() * 1.6;
  for (int attempt = 0;; ++attempt) {
    const auto pseed = mix_seed(seed, 2ULL * attempt);
    const auto eseed = mix_seed(seed, 2ULL * attempt + 1);
    const auto placement = generate_placement(n, 100.0, pseed);
    const auto energies = assign_energies(n, {alpha, 1000.0, eseed});
    const auto g =
        build_disk_graph(placement, range_for_scaled(r, 100.0, n), energies, 0);
    if (is_connected(g)) return g;
  }
}

// Random spanning tree by randomized frontier growth.
inline RoutingTree random_spanning_tree(const NetworkGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  RoutingTree t;
  t.root = g.root;
  t.parent.assign(g.n, kNoParent);
  std::vector<char> in_tree(g.n, 0);
  in_tree[g.root] = 1;
  for (int step = 1; step < g.n; ++step) {
    std::vector<std::pair<int, int>> frontier;  // (outside node, inside parent)
    for (int v = 0; v < g.n; ++v) {
      if (in_tree[v]) continue;
      for (int u : g.adj[v])
        if (in_tree[u]) frontier.emplace_back(v, u);
    }
    const auto [v, u] = frontier[rng.below(frontier.size())];
    t.parent[v] = u;
    in_tree[v] = 1;
  }
  return t;
}

// Spanning-tree count by the matrix-tree theorem (Laplacian minor
// determinant), independent of the enumerator.
inline double matrix_tree_count(const NetworkGraph& g) {
  const int m = g.n - 1;
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m, 0.0L));
  auto idx = [&](int v) { return v < g.root ? v : v - 1; };
  for (auto [u, v] : g.edges) {
    if (u != g.root && v != g.root) {
      a[idx(u)][idx(v)] -= 1.0L;
      a[idx(v)][idx(u)] -= 1.0L;
    }
    if (u != g.root) a[idx(u)][idx(u)] += 1.0L;
    if (v != g.root) a[idx(v)][idx(v)] += 1.0L;
  }
  long double det = 1.0L;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (std::abs(static_cast<double>(a[r][c])) > 1e-12) {
        piv = r;
        break;
      }
    if (piv < 0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < m; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (int k = c; k < m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return static_cast<double>(det);
}

// Minimum possible spanning-tree max degree, by exhaustive enumeration.
inline int exhaustive_mdst_optimum(const NetworkGraph& g,
                                   const EnumerationLimits& limits = {}) {
  int best = g.n;
  enumerate_spanning_trees(g, limits, [&](const RoutingTree& t) {
    std::vector<int> deg(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      if (v != g.root) {
        ++deg[v];
        ++deg[t.parent[v]];
      }
    int mx = 0;
    for (int d : deg) mx = std::max(mx, d);
    best = std::min(best, mx);
  });
  return best;
}

}  // namespace lifetree::testing
