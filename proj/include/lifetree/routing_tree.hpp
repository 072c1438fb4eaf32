// Routing trees, query models and lifetime evaluation.

#pragma once

#include <string>
#include <vector>

#include "lifetree/graph.hpp"

namespace lifetree {

constexpr int kNoParent = -1;

// Parent-function encoding of a spanning tree rooted at the base station.
struct RoutingTree {
  int root = 0;
  std::vector<int> parent;  // parent[i]; kNoParent for the root only

  int n() const { return static_cast<int>(parent.size()); }
};

enum class QueryKind { FullyAggregated, Unaggregated, PartiallyAggregated };

// Flow semantics of a query. rx_cost is the energy to receive one data unit
// (transmit cost is 1); for unaggregated/partial queries reception is only
// charged when include_rx is set.
struct QueryModel {
  QueryKind kind = QueryKind::Unaggregated;
  double rx_cost = 0.5;
  bool include_rx = false;
  int ell = 1;  // PSR size cap, partially aggregated only

  static QueryModel fully_aggregated(double rx_cost);
  static QueryModel unaggregated(bool include_rx = false, double rx_cost = 0.5);
  static QueryModel partially_aggregated(int ell, bool include_rx = false,
                                         double rx_cost = 0.5);

  std::string name() const;  // "full" | "unagg" | "partial"
};

// Per-node outflow/energy rate and the resulting system lifetime
// (time to first non-root node failure).
struct LifetimeReport {
  std::vector<double> outflow;  // data units per epoch; 0 at the root
  std::vector<double> rate;     // energy units per epoch; 0 at the root
  double lifetime = 0.0;        // min over non-root i of energy_i / rate_i
  int bottleneck = -1;          // lowest-id node attaining the min
  int depth = 0;                // tree depth, reported as metadata only
};

// Children lists of a valid tree, each sorted ascending.
std::vector<std::vector<int>> children_of(const RoutingTree& t);

// Structural check of a tree against its graph: single root, acyclic
// spanning parent pointers, every parent edge present in g. Violations are
// returned, not thrown; an empty list means the tree is valid.
std::vector<std::string> validate_tree(const RoutingTree& t, const NetworkGraph& g);

// Per-node transmitted data volume under the query model. Fully aggregated
// sends one unit from every non-root node; unaggregated forwards the whole
// subtree; partially aggregated caps the forwarded volume at ell.
std::vector<double> outflows(const RoutingTree& t, const QueryModel& model);

// Energy rate per node and lifetime. Fully aggregated charges
// 1 + rx_cost * (tree_degree - 1); flow models charge f_out, or
// f_out * (1 + rx_cost) - rx_cost with reception included.
LifetimeReport lifetime(const RoutingTree& t, const NetworkGraph& g,
                        const QueryModel& model);

// Substitutes the tree's indicator and unaggregated flow variables into the
// one-parent, flow-conservation, capacity and positivity conditions of the
// integer routing program at lifetime target T. Violations name the failing
// node or edge; empty result means feasible.
std::vector<std::string> verify_ip_feasibility(const RoutingTree& t,
                                               const NetworkGraph& g, double T);

}  // namespace lifetree
