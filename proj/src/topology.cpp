#include "lifetree/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "lifetree/rng.hpp"

namespace lifetree {

NetworkGraph make_graph(int n, int root, std::vector<double> energy,
                        std::vector<std::pair<int, int>> edges,
                        std::vector<std::pair<double, double>> coords,
                        double area_side) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  if (root < 0 || root >= n) throw std::invalid_argument("root id out of range");
  if (static_cast<int>(energy.size()) != n)
    throw std::invalid_argument("energy list length != n");
  if (!coords.empty() && static_cast<int>(coords.size()) != n)
    throw std::invalid_argument("coords length != n");

  NetworkGraph g;
  g.n = n;
  g.root = root;
  g.area_side = area_side;
  g.energy = std::move(energy);
  g.coords = coords.empty() ? std::vector<std::pair<double, double>>(n, {0.0, 0.0})
                            : std::move(coords);

  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("self-loop in edge list");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge in edge list");

  for (int i = 0; i < n; ++i)
    if (i != root && !(g.energy[i] > 0.0))
      throw std::invalid_argument("non-root node with non-positive energy");

  g.adj.assign(n, {});
  for (auto [a, b] : edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  g.edges = std::move(edges);
  return g;
}

NodePlacement generate_placement(int n, double area_side, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("placement needs n >= 2");
  if (!(area_side > 0.0)) throw std::invalid_argument("area_side must be positive");

  NodePlacement p;
  p.n = n;
  p.area_side = area_side;
  p.seed = seed;
  p.coords.reserve(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, area_side);
    const double y = rng.uniform(0.0, area_side);
    p.coords.emplace_back(x, y);
  }
  return p;
}

double scaled_range(double l_r, double area_side, int n) {
  if (!(l_r > 0.0) || !(area_side > 0.0) || n <= 0)
    throw std::invalid_argument("scaled_range needs positive arguments");
  const double l0 = std::sqrt(area_side * area_side / static_cast<double>(n));
  return l_r / l0;
}

double range_for_scaled(double r, double area_side, int n) {
  if (!(r > 0.0) || !(area_side > 0.0) || n <= 0)
    throw std::invalid_argument("range_for_scaled needs positive arguments");
  return r * std::sqrt(area_side * area_side / static_cast<double>(n));
}

NetworkGraph build_disk_graph(const NodePlacement& placement, double l_r,
                              const std::vector<double>& energies, int root) {
  if (static_cast<int>(energies.size()) != placement.n)
    throw std::invalid_argument("energies length != placement size");

  const double r2 = l_r * l_r;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < placement.n; ++i) {
    for (int j = i + 1; j < placement.n; ++j) {
      const double dx = placement.coords[i].first - placement.coords[j].first;
      const double dy = placement.coords[i].second - placement.coords[j].second;
      if (dx * dx + dy * dy <= r2) edges.emplace_back(i, j);
    }
  }
  return make_graph(placement.n, root, energies, std::move(edges),
                    placement.coords, placement.area_side);
}

std::vector<double> assign_energies(int n, const EnergySpec& spec) {
  if (n < 1) throw std::invalid_argument("assign_energies needs n >= 1");
  if (spec.alpha < 1.0) throw std::invalid_argument("energy ratio alpha must be >= 1");
  if (!(spec.mean > 0.0)) throw std::invalid_argument("mean energy must be positive");

  std::vector<double> e(n);
  Rng rng(spec.seed);
  const double lo = spec.e_min();
  const double hi = spec.e_max();
  for (int i = 0; i < n; ++i) e[i] = rng.uniform(lo, hi);
  return e;
}

bool is_connected(const NetworkGraph& g) {
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(g.root);
  seen[g.root] = 1;
  int count = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == g.n;
}

}  // namespace lifetree
