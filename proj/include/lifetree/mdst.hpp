// Fully aggregated query solver: per-node degree budgets derived from a
// lifetime target, auxiliary-node graph augmentation, a minimum-degree
// spanning tree refinement (max degree at most one above optimal), and the
// lifetime search wrapper around them.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lifetree/graph.hpp"
#include "lifetree/routing_tree.hpp"

namespace lifetree {

// Largest tree degree node energy e supports at lifetime target T:
// floor(1 + (e/T - 1)/c_r). Empty when even degree 1 is unaffordable
// (T > e). Requires 0 < c_r < 1; at c_r = 0 every tree is optimal and the
// caller must branch before calling.
std::optional<long long> degree_bound(double e, double T, double c_r);

// Per-node degree budgets for a target lifetime; the root is unconstrained
// (budget N). Empty when T exceeds the minimum non-root energy.
struct DegreeBounds {
  double target = 0.0;
  std::vector<long long> max_degree;
};
std::optional<DegreeBounds> degree_bounds_for(const NetworkGraph& g, double T,
                                              double c_r);

// Base graph plus max(0, N - B_i) degree-1 auxiliary nodes attached to each
// real node i; auxiliary ids start at real_n.
struct AugmentedGraph {
  int real_n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> aux_of;  // per real node

  int total_n() const { return static_cast<int>(adj.size()); }
};
std::optional<AugmentedGraph> augment_graph(const NetworkGraph& g, double T,
                                            double c_r);

// Spanning tree of an arbitrary connected graph whose maximum degree is at
// most one above the minimum possible. Local refinement: repeatedly mark
// vertices of near-maximal degree, discover non-tree edges whose cycles can
// absorb them, and apply degree-reducing edge swaps until no maximal-degree
// vertex can be improved.
std::vector<std::pair<int, int>> fr_mdst(const std::vector<std::vector<int>>& adj);

enum class ScanMode {
  Auto,    // scan every candidate when there are few, else binary search
  Binary,  // always binary search
  All,     // always evaluate every candidate
};

struct AggregatedTreeResult {
  RoutingTree tree;
  double lifetime = 0.0;  // achieved fully aggregated lifetime
  int probes = 0;         // candidate targets actually evaluated
};

// Lifetime search for fully aggregated queries: enumerates the candidate
// targets {e_i / (1 + c_r m)}, probes them (binary search or full scan)
// with augment + fr_mdst, and returns the best tree over all probes. At
// c_r = 0 a breadth-first tree already meets the e_min bound.
AggregatedTreeResult aggregated_tree(const NetworkGraph& g, double c_r,
                                     ScanMode scan = ScanMode::Auto);

}  // namespace lifetree
