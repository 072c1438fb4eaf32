#include "lifetree/routing_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lifetree {

QueryModel QueryModel::fully_aggregated(double rx_cost) {
  if (!(rx_cost >= 0.0 && rx_cost < 1.0))
    throw std::invalid_argument("receive cost must satisfy 0 <= c_r < 1");
  QueryModel m;
  m.kind = QueryKind::FullyAggregated;
  m.rx_cost = rx_cost;
  return m;
}

QueryModel QueryModel::unaggregated(bool include_rx, double rx_cost) {
  if (!(rx_cost >= 0.0 && rx_cost < 1.0))
    throw std::invalid_argument("receive cost must satisfy 0 <= c_r < 1");
  QueryModel m;
  m.kind = QueryKind::Unaggregated;
  m.include_rx = include_rx;
  m.rx_cost = rx_cost;
  return m;
}

QueryModel QueryModel::partially_aggregated(int ell, bool include_rx, double rx_cost) {
  if (ell < 1) throw std::invalid_argument("flow cap ell must be >= 1");
  if (!(rx_cost >= 0.0 && rx_cost < 1.0))
    throw std::invalid_argument("receive cost must satisfy 0 <= c_r < 1");
  QueryModel m;
  m.kind = QueryKind::PartiallyAggregated;
  m.ell = ell;
  m.include_rx = include_rx;
  m.rx_cost = rx_cost;
  return m;
}

std::string QueryModel::name() const {
  switch (kind) {
    case QueryKind::FullyAggregated: return "full";
    case QueryKind::Unaggregated: return "unagg";
    case QueryKind::PartiallyAggregated: return "partial";
  }
  return "?";
}

std::vector<std::vector<int>> children_of(const RoutingTree& t) {
  std::vector<std::vector<int>> ch(t.parent.size());
  for (int v = 0; v < t.n(); ++v)
    if (t.parent[v] != kNoParent) ch[t.parent[v]].push_back(v);
  return ch;
}

std::vector<std::string> validate_tree(const RoutingTree& t, const NetworkGraph& g) {
  std::vector<std::string> bad;
  if (t.n() != g.n) {
    bad.push_back("tree size " + std::to_string(t.n()) + " != graph size " +
                  std::to_string(g.n));
    return bad;
  }
  if (t.root != g.root)
    bad.push_back("tree root " + std::to_string(t.root) + " != graph root " +
                  std::to_string(g.root));

  for (int v = 0; v < t.n(); ++v) {
    const int p = t.parent[v];
    if (v == t.root) {
      if (p != kNoParent) bad.push_back("root node " + std::to_string(v) + " has a parent");
      continue;
    }
    if (p == kNoParent) {
      bad.push_back("non-root node " + std::to_string(v) + " has no parent");
    } else if (p < 0 || p >= t.n()) {
      bad.push_back("node " + std::to_string(v) + " parent out of range");
    } else if (!g.has_edge(v, p)) {
      bad.push_back("non-edge parent: (" + std::to_string(v) + "," + std::to_string(p) + ")");
    }
  }
  if (!bad.empty()) return bad;

  // Walk each parent chain; a chain that revisits a node without reaching
  // the root is a cycle.
  std::vector<int> state(t.n(), 0);  // 0 unvisited, 1 on current chain, 2 done
  state[t.root] = 2;
  for (int v = 0; v < t.n(); ++v) {
    if (state[v]) continue;
    std::vector<int> chain;
    int x = v;
    while (state[x] == 0) {
      state[x] = 1;
      chain.push_back(x);
      x = t.parent[x];
    }
    if (state[x] == 1) {
      bad.push_back("cycle through node " + std::to_string(x));
      return bad;
    }
    for (int c : chain) state[c] = 2;
  }
  return bad;
}

namespace {

void require_valid(const RoutingTree& t, const NetworkGraph& g) {
  auto bad = validate_tree(t, g);
  if (!bad.empty()) throw std::invalid_argument("invalid routing tree: " + bad.front());
}

// Nodes ordered so that every child precedes its parent.
std::vector<int> leaves_first_order(const RoutingTree& t,
                                    const std::vector<std::vector<int>>& ch) {
  std::vector<int> order;
  order.reserve(t.n());
  std::vector<int> stack = {t.root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int c : ch[u]) stack.push_back(c);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

std::vector<double> outflows(const RoutingTree& t, const QueryModel& model) {
  const auto ch = children_of(t);
  std::vector<double> f(t.n(), 0.0);
  if (model.kind == QueryKind::FullyAggregated) {
    for (int v = 0; v < t.n(); ++v) f[v] = (v == t.root) ? 0.0 : 1.0;
    return f;
  }
  for (int v : leaves_first_order(t, ch)) {
    if (v == t.root) continue;
    double s = 1.0;
    for (int c : ch[v]) s += f[c];
    f[v] = (model.kind == QueryKind::PartiallyAggregated)
               ? std::min<double>(model.ell, s)
               : s;
  }
  return f;
}

LifetimeReport lifetime(const RoutingTree& t, const NetworkGraph& g,
                        const QueryModel& model) {
  require_valid(t, g);
  const auto ch = children_of(t);

  LifetimeReport rep;
  rep.outflow = outflows(t, model);
  rep.rate.assign(t.n(), 0.0);
  for (int v = 0; v < t.n(); ++v) {
    if (v == t.root) continue;
    if (model.kind == QueryKind::FullyAggregated) {
      const double tree_degree = static_cast<double>(ch[v].size()) + 1.0;
      rep.rate[v] = 1.0 + model.rx_cost * (tree_degree - 1.0);
    } else if (model.include_rx) {
      rep.rate[v] = rep.outflow[v] * (1.0 + model.rx_cost) - model.rx_cost;
    } else {
      rep.rate[v] = rep.outflow[v];
    }
  }

  rep.lifetime = std::numeric_limits<double>::infinity();
  for (int v = 0; v < t.n(); ++v) {
    if (v == t.root) continue;
    const double life = g.energy[v] / rep.rate[v];
    if (life < rep.lifetime) {
      rep.lifetime = life;
      rep.bottleneck = v;
    }
  }

  std::vector<int> depth(t.n(), 0);
  auto order = leaves_first_order(t, ch);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v != t.root) depth[v] = depth[t.parent[v]] + 1;
    rep.depth = std::max(rep.depth, depth[v]);
  }
  return rep;
}

std::vector<std::string> verify_ip_feasibility(const RoutingTree& t,
                                               const NetworkGraph& g, double T) {
  require_valid(t, g);
  if (!(T > 0.0)) throw std::invalid_argument("lifetime target T must be positive");

  const auto f = outflows(t, QueryModel::unaggregated());
  const double eps = 1e-9;
  std::vector<std::string> bad;

  // One parent per non-root node; x and f vanish off parent edges by
  // construction, so the remaining checks are conservation and capacity.
  for (int i = 0; i < g.n; ++i) {
    if (i == g.root) continue;
    double inflow = 0.0;
    for (int j = 0; j < g.n; ++j)
      if (j != g.root && t.parent[j] == i) inflow += f[j];
    if (std::abs(f[i] - inflow - 1.0) > eps)
      bad.push_back("flow conservation: node " + std::to_string(i) + " outflow " +
                    std::to_string(f[i]) + " != inflow " + std::to_string(inflow) + " + 1");

    const double cap = g.energy[i] / T;
    if (f[i] < 1.0 - eps)
      bad.push_back("capacity: parent edge of node " + std::to_string(i) +
                    " carries less than one unit");
    if (f[i] > cap * (1.0 + 1e-12) + eps)
      bad.push_back("capacity: node " + std::to_string(i) + " outflow " +
                    std::to_string(f[i]) + " exceeds e/T = " + std::to_string(cap));
    if (f[i] < -eps)
      bad.push_back("positivity: node " + std::to_string(i) + " flow negative");
  }
  return bad;
}

}  // namespace lifetree
