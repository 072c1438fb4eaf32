// Baseline and heuristic tree builders for unaggregated and partially
// aggregated queries.

#pragma once

#include <cstdint>
#include <vector>

#include "lifetree/graph.hpp"
#include "lifetree/routing_tree.hpp"

namespace lifetree {

enum class TieBreak { LowestId, Random };

// Breadth-first shortest-hop tree. Parent ties go to the lowest node id,
// or to a seeded uniform pick with TieBreak::Random.
RoutingTree min_hop_tree(const NetworkGraph& g, TieBreak tie = TieBreak::LowestId,
                         std::uint64_t seed = 0);

// Diagnostics recorded by the tree builders.
struct SearchTrace {
  struct Step {
    int node;         // node attached (ecrt) or re-parented (local_opt)
    double lifetime;  // lifetime of the working tree after the step
  };
  std::vector<Step> steps;
  int sweeps = 0;
  bool capped = false;  // local_opt hit its sweep cap before converging
};

// Greedy growth from the root: at each step attach the outside node whose
// addition maximizes the lifetime of the partial tree built so far; ties
// prefer the node with maximum energy, then lowest node id, then lowest
// parent id. Flow queries only.
RoutingTree ecrt(const NetworkGraph& g, const QueryModel& model,
                 SearchTrace* trace = nullptr);

// Iterated single-node parent switching: sweeps nodes in ascending id and
// applies the best improving switch per node until a full sweep changes
// nothing. Improvement is lexicographic: a strictly longer lifetime, or an
// equal lifetime attained by strictly fewer bottleneck nodes (equal-energy
// instances sit on broad lifetime plateaus that pure strict ascent cannot
// leave). The result cannot be improved by re-parenting any single node.
// Sweeps are capped at 10 N^2.
RoutingTree local_opt(const NetworkGraph& g, const RoutingTree& t0,
                      const QueryModel& model, SearchTrace* trace = nullptr);

// ECRT followed by LOCAL-OPT polishing.
RoutingTree ecrt_local_opt(const NetworkGraph& g, const QueryModel& model,
                           SearchTrace* trace = nullptr);

}  // namespace lifetree
