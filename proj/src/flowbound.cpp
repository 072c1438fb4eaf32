#include "lifetree/flowbound.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "lifetree/oracle.hpp"
#include "lifetree/topology.hpp"

namespace lifetree {

FlowNetwork build_flow_network(const NetworkGraph& g, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("lifetime target T must be >= 0");

  FlowNetwork net;
  net.node_in.resize(g.n);
  net.node_out.resize(g.n);
  net.split_arc.assign(g.n, -1);

  int next = 0;
  for (int i = 0; i < g.n; ++i) {
    if (i == g.root) {
      net.node_in[i] = net.node_out[i] = next++;
    } else {
      net.node_in[i] = next++;
      net.node_out[i] = next++;
    }
  }
  net.source = next++;
  net.num_nodes = next;
  net.sink = net.node_in[g.root];

  double unbounded = 1.0;
  for (int i = 0; i < g.n; ++i)
    if (i != g.root) unbounded += g.energy[i];

  for (int i = 0; i < g.n; ++i) {
    if (i == g.root) continue;
    net.arcs.push_back({net.source, net.node_in[i], T});
    net.split_arc[i] = static_cast<int>(net.arcs.size());
    net.arcs.push_back({net.node_in[i], net.node_out[i], g.energy[i]});
  }
  for (auto [a, b] : g.edges) {
    net.arcs.push_back({net.node_out[a], net.node_in[b], unbounded});
    net.arcs.push_back({net.node_out[b], net.node_in[a], unbounded});
  }
  return net;
}

namespace {

// Dinic over an adjacency structure with residual capacities.
struct Dinic {
  struct Edge {
    int to;
    double cap;
    int rev;
    int orig = -1;  // index into FlowNetwork::arcs, -1 for reverse edges
  };
  std::vector<std::vector<Edge>> g;
  std::vector<int> level, iter;
  double eps;

  Dinic(int n, double eps) : g(n), level(n), iter(n), eps(eps) {}

  void add(int u, int v, double cap, int orig) {
    g[u].push_back({v, cap, static_cast<int>(g[v].size()), orig});
    g[v].push_back({u, 0.0, static_cast<int>(g[u].size()) - 1, -1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& e : g[u]) {
        if (e.cap > eps && level[e.to] < 0) {
          level[e.to] = level[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level[t] >= 0;
  }

  double dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& i = iter[u]; i < static_cast<int>(g[u].size()); ++i) {
      Edge& e = g[u][i];
      if (e.cap > eps && level[e.to] == level[u] + 1) {
        const double d = dfs(e.to, t, std::min(limit, e.cap));
        if (d > eps) {
          e.cap -= d;
          g[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0.0;
  }

  double run(int s, int t) {
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (true) {
        const double f = dfs(s, t, std::numeric_limits<double>::infinity());
        if (f <= eps) break;
        total += f;
      }
    }
    return total;
  }
};

}  // namespace

FlowSolution max_flow(const FlowNetwork& net, double eps) {
  Dinic dinic(net.num_nodes, eps);
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i)
    dinic.add(net.arcs[i].tail, net.arcs[i].head, net.arcs[i].cap, i);

  FlowSolution sol;
  sol.value = dinic.run(net.source, net.sink);

  sol.flow.assign(net.arcs.size(), 0.0);
  for (const auto& edges : dinic.g)
    for (const auto& e : edges)
      if (e.orig >= 0) sol.flow[e.orig] = net.arcs[e.orig].cap - e.cap;

  sol.source_side.assign(net.num_nodes, 0);
  std::queue<int> q;
  q.push(net.source);
  sol.source_side[net.source] = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& e : dinic.g[u])
      if (e.cap > eps && !sol.source_side[e.to]) {
        sol.source_side[e.to] = 1;
        q.push(e.to);
      }
  }
  return sol;
}

bool is_feasible(const NetworkGraph& g, double T, double eps) {
  if (T <= 0.0) return true;
  const auto net = build_flow_network(g, T);
  const auto sol = max_flow(net, eps);
  const double demand = static_cast<double>(g.n - 1) * T;
  return sol.value >= demand - eps * static_cast<double>(g.n - 1);
}

FlowBoundResult lp_upper_bound(const NetworkGraph& g, double rel_tol) {
  if (!is_connected(g))
    throw std::invalid_argument("lp_upper_bound requires a connected graph");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");

  const double emin = emin_bound(g);
  FlowBoundResult res;
  double cut_probe;
  if (is_feasible(g, emin)) {
    res.t_lp = emin;  // the bound is tight; no bisection needed
    cut_probe = emin * (1.0 + 2.0 * rel_tol);
  } else {
    double lo = 0.0, hi = emin;
    while (hi - lo > rel_tol * emin) {
      const double mid = 0.5 * (lo + hi);
      (is_feasible(g, mid) ? lo : hi) = mid;
    }
    // The infeasible end keeps the value an upper bound on every tree
    // lifetime; it overshoots the true relaxation value by at most
    // rel_tol * e_min.
    res.t_lp = hi;
    cut_probe = hi;
  }

  // Throughput per node at the returned bound.
  {
    const auto net = build_flow_network(g, res.t_lp);
    const auto sol = max_flow(net, 1e-9);
    res.throughput.assign(g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
      if (net.split_arc[i] >= 0) res.throughput[i] = sol.flow[net.split_arc[i]];
  }

  // Min cut at or just above the bound names the limiting relay nodes.
  {
    const auto net = build_flow_network(g, cut_probe);
    const auto sol = max_flow(net, 1e-9);
    for (int i = 0; i < g.n; ++i) {
      if (net.split_arc[i] < 0) continue;
      if (sol.source_side[net.node_in[i]] && !sol.source_side[net.node_out[i]])
        res.bottleneck.push_back(i);
    }
  }
  return res;
}

}  // namespace lifetree
