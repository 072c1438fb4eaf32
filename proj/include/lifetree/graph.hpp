// Core graph and placement types shared by every module.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lifetree {

// Node coordinates produced by the random placement generator.
struct NodePlacement {
  int n = 0;
  double area_side = 0.0;
  std::vector<std::pair<double, double>> coords;  // indexed by node id
  std::uint64_t seed = 0;
};

// Uniform energy assignment controlled by the ratio alpha = e_max/e_min,
// with (e_min + e_max)/2 pinned to `mean`.
struct EnergySpec {
  double alpha = 1.0;
  double mean = 1000.0;
  std::uint64_t seed = 0;

  double e_min() const { return 2.0 * mean / (1.0 + alpha); }
  double e_max() const { return alpha * e_min(); }
};

// Immutable undirected communication graph. Node ids are 0-based and the
// base station is `root` (id 0 by convention); its energy entry is never
// consumed by any algorithm.
struct NetworkGraph {
  int n = 0;
  int root = 0;
  double area_side = 0.0;                          // 0 when non-geometric
  std::vector<double> energy;                      // size n
  std::vector<std::pair<double, double>> coords;   // size n; zeros when non-geometric
  std::vector<std::vector<int>> adj;               // sorted neighbor lists
  std::vector<std::pair<int, int>> edges;          // canonical (lo, hi), sorted

  bool has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int x : adj[a])
      if (x == b) return true;
    return false;
  }
};

// Builds adjacency from an edge list and checks the structural invariants:
// valid ids, no self-loops, no duplicate edges, positive non-root energies.
NetworkGraph make_graph(int n, int root, std::vector<double> energy,
                        std::vector<std::pair<int, int>> edges,
                        std::vector<std::pair<double, double>> coords = {},
                        double area_side = 0.0);

}  // namespace lifetree
