#include "lifetree/oracle.hpp"

#include <algorithm>
#include <limits>

#include "lifetree/topology.hpp"

namespace lifetree {

namespace {

struct Enumerator {
  const NetworkGraph& g;
  const EnumerationLimits& limits;
  const std::function<void(const RoutingTree&)>& visit;
  std::vector<int> order;  // non-root nodes ascending
  RoutingTree tree;
  long long work = 0;

  void spend() {
    if (++work > limits.budget)
      throw BudgetExceeded("spanning-tree enumeration exceeded budget of " +
                           std::to_string(limits.budget) + " steps");
  }

  // Candidate parent u closes a cycle iff the already-assigned parent chain
  // from u leads back to v. Chains through ids above v are still open.
  bool closes_cycle(int v, int u) const {
    int x = u;
    while (true) {
      if (x == v) return true;
      if (x == tree.root || x > v) return false;
      x = tree.parent[x];
    }
  }

  void assign(std::size_t idx) {
    if (idx == order.size()) {
      visit(tree);
      return;
    }
    const int v = order[idx];
    for (int u : g.adj[v]) {
      spend();
      if (closes_cycle(v, u)) continue;
      tree.parent[v] = u;
      assign(idx + 1);
    }
    tree.parent[v] = kNoParent;
  }
};

}  // namespace

void enumerate_spanning_trees(const NetworkGraph& g, const EnumerationLimits& limits,
                              const std::function<void(const RoutingTree&)>& visit) {
  if (g.n > limits.max_nodes)
    throw std::invalid_argument("graph too large for exhaustive enumeration (n=" +
                                std::to_string(g.n) + ", cap=" +
                                std::to_string(limits.max_nodes) + ")");
  if (!is_connected(g))
    throw std::invalid_argument("enumerate_spanning_trees requires a connected graph");

  Enumerator e{g, limits, visit, {}, {}, 0};
  e.tree.root = g.root;
  e.tree.parent.assign(g.n, kNoParent);
  for (int v = 0; v < g.n; ++v)
    if (v != g.root) e.order.push_back(v);
  e.assign(0);
}

OracleResult brute_force_optimal(const NetworkGraph& g, const QueryModel& model,
                                 const EnumerationLimits& limits) {
  OracleResult best;
  best.lifetime = -1.0;

  // Lifetime evaluation inlined over the parent vector; the enumerator
  // yields trees in lexicographic order, so keeping strict improvements
  // leaves the lexicographically least optimum.
  std::vector<double> f(g.n);
  std::vector<int> cnt(g.n), stack;
  stack.reserve(g.n);
  enumerate_spanning_trees(g, limits, [&](const RoutingTree& t) {
    ++best.trees_seen;
    double life = std::numeric_limits<double>::infinity();
    if (model.kind == QueryKind::FullyAggregated) {
      std::fill(f.begin(), f.end(), 0.0);  // tree degree counts
      for (int v = 0; v < g.n; ++v)
        if (v != g.root) {
          f[v] += 1.0;
          f[t.parent[v]] += 1.0;
        }
      for (int v = 0; v < g.n; ++v) {
        if (v == g.root) continue;
        life = std::min(life, g.energy[v] / (1.0 + model.rx_cost * (f[v] - 1.0)));
      }
    } else {
      // Flows accumulate leaves-first; cnt tracks unprocessed children.
      std::fill(f.begin(), f.end(), 1.0);
      std::fill(cnt.begin(), cnt.end(), 0);
      stack.clear();
      for (int v = 0; v < g.n; ++v)
        if (v != g.root) ++cnt[t.parent[v]];
      for (int v = 0; v < g.n; ++v)
        if (v != g.root && cnt[v] == 0) stack.push_back(v);
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (model.kind == QueryKind::PartiallyAggregated)
          f[v] = std::min<double>(model.ell, f[v]);
        const int p = t.parent[v];
        const double rate = model.include_rx
                                ? f[v] * (1.0 + model.rx_cost) - model.rx_cost
                                : f[v];
        life = std::min(life, g.energy[v] / rate);
        if (p == g.root) continue;
        f[p] += f[v];
        if (--cnt[p] == 0) stack.push_back(p);
      }
    }
    if (life > best.lifetime) {
      best.lifetime = life;
      best.tree = t;
    }
  });
  return best;
}

double emin_bound(const NetworkGraph& g) {
  double e = std::numeric_limits<double>::infinity();
  for (int v = 0; v < g.n; ++v)
    if (v != g.root) e = std::min(e, g.energy[v]);
  return e;
}

bool has_cover_of_size(const SetCoverInstance& inst) {
  const int k = static_cast<int>(inst.sets.size());
  if (inst.p < 0) return false;
  const int p = std::min(inst.p, k);
  std::vector<int> masks(k, 0);
  for (int i = 0; i < k; ++i)
    for (int el : inst.sets[i]) masks[i] |= 1 << el;
  const int full = (1 << inst.n_elements) - 1;

  for (int pick = 0; pick < (1 << k); ++pick) {
    if (__builtin_popcount(static_cast<unsigned>(pick)) > p) continue;
    int got = 0;
    for (int i = 0; i < k; ++i)
      if (pick & (1 << i)) got |= masks[i];
    if (got == full) return true;
  }
  return false;
}

NetworkGraph set_cover_gadget(const SetCoverInstance& inst) {
  const int k = static_cast<int>(inst.sets.size());
  const int n = inst.n_elements;
  if (n < 1 || k < 1) throw std::invalid_argument("gadget needs elements and sets");
  if (inst.p < 1 || inst.p > k) throw std::invalid_argument("cover size p out of range");
  std::vector<int> seen(n, 0);
  for (const auto& s : inst.sets)
    for (int el : s) {
      if (el < 0 || el >= n) throw std::invalid_argument("set element out of range");
      seen[el] = 1;
    }
  for (int el = 0; el < n; ++el)
    if (!seen[el]) throw std::invalid_argument("element " + std::to_string(el) +
                                               " appears in no set");

  // Rows: root | selectors (2k-p+1 and p+n+1) | k relays of energy 2 |
  // k set nodes of energy |S_i|+1 | n unit-energy element nodes.
  const int sel_a = 1, sel_b = 2;
  const int relay0 = 3;
  const int set0 = 3 + k;
  const int elem0 = 3 + 2 * k;
  const int total = 3 + 2 * k + n;

  std::vector<double> energy(total, 1.0);
  energy[sel_a] = 2.0 * k - inst.p + 1.0;
  energy[sel_b] = inst.p + n + 1.0;
  for (int i = 0; i < k; ++i) {
    energy[relay0 + i] = 2.0;
    energy[set0 + i] = static_cast<double>(inst.sets[i].size()) + 1.0;
  }

  std::vector<std::pair<int, int>> edges;
  edges.emplace_back(0, sel_a);
  edges.emplace_back(0, sel_b);
  for (int i = 0; i < k; ++i) {
    edges.emplace_back(sel_a, relay0 + i);
    edges.emplace_back(relay0 + i, set0 + i);
    edges.emplace_back(sel_b, set0 + i);
    for (int el : inst.sets[i]) edges.emplace_back(set0 + i, elem0 + el);
  }
  return make_graph(total, 0, std::move(energy), std::move(edges));
}

}  // namespace lifetree
