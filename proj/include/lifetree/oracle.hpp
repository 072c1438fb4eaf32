// Ground-truth machinery: exhaustive optimal-tree search, the minimum-energy
// upper bound, and the Set-Cover hardness gadget.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "lifetree/graph.hpp"
#include "lifetree/routing_tree.hpp"

namespace lifetree {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Guards for the exhaustive enumerator. The node cap is a cheap proxy for
// the spanning-tree count; the work budget is the real limit and counts
// every parent-assignment step.
struct EnumerationLimits {
  int max_nodes = 10;
  long long budget = 10'000'000;
};

// Enumerates every spanning tree of g (as a root-oriented parent vector) in
// lexicographic parent-vector order, invoking the callback on each. Throws
// BudgetExceeded rather than returning a partial answer.
void enumerate_spanning_trees(const NetworkGraph& g, const EnumerationLimits& limits,
                              const std::function<void(const RoutingTree&)>& visit);

struct OracleResult {
  RoutingTree tree;
  double lifetime = 0.0;
  long long trees_seen = 0;
};

// Exhaustive optimum over all spanning trees; the argmax is the
// lexicographically least parent vector among optima.
OracleResult brute_force_optimal(const NetworkGraph& g, const QueryModel& model,
                                 const EnumerationLimits& limits = {});

// Minimum non-root energy; an upper bound on any tree's lifetime.
double emin_bound(const NetworkGraph& g);

// A Set-Cover decision instance: does a selection of p subsets cover all
// elements? Elements are 0-based ids.
struct SetCoverInstance {
  int n_elements = 0;
  std::vector<std::vector<int>> sets;
  int p = 0;
};

// Exhaustive check over all p-subsets of the collection.
bool has_cover_of_size(const SetCoverInstance& inst);

// Builds the five-row reduction graph whose unaggregated optimum reaches
// lifetime 1 iff the instance has a cover of size p. Node ids: 0 root,
// 1..2 selector nodes, 3..k+2 relay nodes, k+3..2k+2 set nodes,
// 2k+3..2k+n+2 element nodes.
NetworkGraph set_cover_gadget(const SetCoverInstance& inst);

}  // namespace lifetree
