// LP-relaxation upper bound on tree lifetime via node-capacitated max flow.

#pragma once

#include <vector>

#include "lifetree/graph.hpp"

namespace lifetree {

// Directed flow network built from the communication graph for a lifetime
// target T: a synthetic source injects T into every non-root node, each
// non-root node i is split by an internal arc of capacity e_i, graph edges
// become unbounded arcs in both directions, and the root is the sink.
struct FlowNetwork {
  struct Arc {
    int tail = 0;
    int head = 0;
    double cap = 0.0;
  };
  int num_nodes = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;
  std::vector<int> split_arc;  // per real node: arc index of i_in -> i_out, -1 for root
  std::vector<int> node_in;    // per real node: entry vertex (root maps to itself)
  std::vector<int> node_out;   // per real node: exit vertex (root maps to itself)
};

FlowNetwork build_flow_network(const NetworkGraph& g, double T);

struct FlowSolution {
  double value = 0.0;
  std::vector<double> flow;        // per arc, aligned with FlowNetwork::arcs
  std::vector<char> source_side;   // residual-reachable vertices (min cut side)
};

// Exact max flow (Dinic) with an absolute residual tolerance.
FlowSolution max_flow(const FlowNetwork& net, double eps = 1e-9);

// True iff all N-1 unit injections of size T fit: max flow >= (N-1)(T - eps).
bool is_feasible(const NetworkGraph& g, double T, double eps = 1e-9);

struct FlowBoundResult {
  double t_lp = 0.0;
  std::vector<int> bottleneck;       // nodes whose split arc crosses the min cut
                                     // just above t_lp
  std::vector<double> throughput;    // per-node flow across the split arc at t_lp
};

// Binary search on [0, e_min] for the largest feasible T, to relative
// tolerance rel_tol. Returns the infeasible bracket end so the value never
// understates the bound: t_lp dominates every tree lifetime and overshoots
// the true relaxation value by at most rel_tol * e_min.
FlowBoundResult lp_upper_bound(const NetworkGraph& g, double rel_tol = 1e-6);

}  // namespace lifetree
