#include "lifetree/treesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "lifetree/rng.hpp"
#include "lifetree/topology.hpp"

namespace lifetree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprovementSlack = 1e-12;  // relative; plateau control

std::vector<int> hop_distances(const NetworkGraph& g) {
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[g.root] = 0;
  q.push(g.root);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

}  // namespace

RoutingTree min_hop_tree(const NetworkGraph& g, TieBreak tie, std::uint64_t seed) {
  if (!is_connected(g))
    throw std::invalid_argument("min_hop_tree requires a connected graph");

  const auto dist = hop_distances(g);
  RoutingTree t;
  t.root = g.root;
  t.parent.assign(g.n, kNoParent);
  Rng rng(seed);
  for (int v = 0; v < g.n; ++v) {
    if (v == g.root) continue;
    std::vector<int> eligible;
    for (int u : g.adj[v])
      if (dist[u] == dist[v] - 1) eligible.push_back(u);
    t.parent[v] = (tie == TieBreak::LowestId)
                      ? eligible.front()
                      : eligible[rng.below(eligible.size())];
  }
  return t;
}

namespace {

// Energy drain per epoch as a function of transmitted volume.
struct FlowRate {
  bool include_rx;
  double rx_cost;
  double operator()(double fout) const {
    return include_rx ? fout * (1.0 + rx_cost) - rx_cost : fout;
  }
};

void require_flow_model(const QueryModel& model, const char* who) {
  if (model.kind == QueryKind::FullyAggregated)
    throw std::invalid_argument(std::string(who) +
                                " applies to unaggregated or partially aggregated queries");
}

}  // namespace

RoutingTree ecrt(const NetworkGraph& g, const QueryModel& model, SearchTrace* trace) {
  require_flow_model(model, "ecrt");
  if (!is_connected(g)) throw std::invalid_argument("ecrt requires a connected graph");

  const FlowRate rate{model.include_rx, model.rx_cost};
  const double cap = (model.kind == QueryKind::PartiallyAggregated)
                         ? static_cast<double>(model.ell)
                         : kInf;

  RoutingTree t;
  t.root = g.root;
  t.parent.assign(g.n, kNoParent);
  std::vector<char> in_tree(g.n, 0);
  in_tree[g.root] = 1;
  std::vector<double> fout(g.n, 0.0);
  double cur_life = kInf;

  // Lifetime of the partial tree if leaf v were attached under u; only the
  // chain u..root changes, and ratios along it can only drop.
  auto attach_life = [&](int v, int u) {
    double life = std::min(cur_life, g.energy[v] / rate(1.0));
    double delta = 1.0;
    for (int x = u; x != g.root && delta > 0.0; x = t.parent[x]) {
      const double nf = std::min(cap, fout[x] + delta);
      delta = nf - fout[x];
      if (delta <= 0.0) break;
      life = std::min(life, g.energy[x] / rate(nf));
    }
    return life;
  };

  for (int step = 1; step < g.n; ++step) {
    double best_life = -1.0, best_e = -1.0;
    int best_v = -1, best_u = -1;
    for (int v = 0; v < g.n; ++v) {
      if (in_tree[v]) continue;
      for (int u : g.adj[v]) {
        if (!in_tree[u]) continue;
        const double life = attach_life(v, u);
        const bool better =
            life > best_life ||
            (life == best_life &&
             (g.energy[v] > best_e ||
              (g.energy[v] == best_e && (v < best_v || (v == best_v && u < best_u)))));
        if (better) {
          best_life = life;
          best_e = g.energy[v];
          best_v = v;
          best_u = u;
        }
      }
    }

    t.parent[best_v] = best_u;
    in_tree[best_v] = 1;
    fout[best_v] = 1.0;
    cur_life = std::min(cur_life, g.energy[best_v] / rate(1.0));
    double delta = 1.0;
    for (int x = best_u; x != g.root && delta > 0.0; x = t.parent[x]) {
      const double nf = std::min(cap, fout[x] + delta);
      delta = nf - fout[x];
      if (delta <= 0.0) break;
      fout[x] = nf;
      cur_life = std::min(cur_life, g.energy[x] / rate(nf));
    }
    if (trace) trace->steps.push_back({best_v, cur_life});
  }
  return t;
}

namespace {

// Mutable tree state shared by the local search; handles the three query
// models behind one switch-evaluation interface.
struct LocalSearchState {
  const NetworkGraph& g;
  QueryModel model;
  FlowRate rate;
  double cap;
  bool degree_based;  // fully aggregated: rate from tree degree, not flow

  RoutingTree t;
  std::vector<double> raw;    // 1 + sum of children outflows (flow models)
  std::vector<double> fout;   // min(cap, raw)
  std::vector<int> children;  // child counts (degree model)
  std::vector<double> ratio;  // e / rate; +inf at the root
  double cur_life = kInf;
  int cur_count = 0;          // nodes attaining the bottleneck ratio
  std::vector<int> argmin;

  // Per-candidate overlay, epoch-stamped to avoid clearing.
  std::vector<long long> stamp;
  std::vector<double> o_raw, o_fout, o_ratio;
  long long epoch = 0;

  LocalSearchState(const NetworkGraph& g_, const RoutingTree& t0, const QueryModel& m)
      : g(g_),
        model(m),
        rate{m.include_rx, m.rx_cost},
        cap(m.kind == QueryKind::PartiallyAggregated ? static_cast<double>(m.ell) : kInf),
        degree_based(m.kind == QueryKind::FullyAggregated),
        t(t0) {
    const auto bad = validate_tree(t, g);
    if (!bad.empty()) throw std::invalid_argument("local_opt: invalid tree: " + bad.front());
    stamp.assign(g.n, 0);
    o_raw.assign(g.n, 0.0);
    o_fout.assign(g.n, 0.0);
    o_ratio.assign(g.n, 0.0);
    rebuild();
  }

  double node_ratio(int v) const {
    if (v == t.root) return kInf;
    if (degree_based) {
      const double tree_degree = children[v] + 1.0;
      return g.energy[v] / (1.0 + model.rx_cost * (tree_degree - 1.0));
    }
    return g.energy[v] / rate(fout[v]);
  }

  void rebuild() {
    children.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      if (v != t.root) ++children[t.parent[v]];
    if (!degree_based) {
      const auto f = outflows(t, model);
      fout = f;
      raw.assign(g.n, 1.0);
      for (int v = 0; v < g.n; ++v) {
        if (v == t.root) continue;
        raw[t.parent[v]] += fout[v];
      }
      raw[t.root] = 0.0;
    }
    ratio.assign(g.n, kInf);
    cur_life = kInf;
    for (int v = 0; v < g.n; ++v) {
      ratio[v] = node_ratio(v);
      cur_life = std::min(cur_life, ratio[v]);
    }
    argmin.clear();
    for (int v = 0; v < g.n; ++v)
      if (v != t.root && ratio[v] <= cur_life * (1.0 + kImprovementSlack))
        argmin.push_back(v);
    cur_count = static_cast<int>(argmin.size());
  }

  // True iff u lies in the subtree rooted at v.
  bool in_subtree(int u, int v) const {
    for (int x = u;; x = t.parent[x]) {
      if (x == v) return true;
      if (x == t.root) return false;
    }
  }

  bool on_parent_chain(int a, int v) const {
    for (int x = t.parent[v]; x != t.root; x = t.parent[x])
      if (x == a) return true;
    return false;
  }

  // A switch can only help (raise the lifetime, or thin out a tied
  // bottleneck set) if it relieves at least one bottleneck node.
  bool bottleneck_reachable(int v) const {
    const int p = t.parent[v];
    for (int a : argmin) {
      if (degree_based ? (a == p) : on_parent_chain(a, v)) return true;
    }
    return false;
  }

  void touch(int x) {
    if (stamp[x] != epoch) {
      stamp[x] = epoch;
      o_raw[x] = degree_based ? 0.0 : raw[x];
      o_fout[x] = degree_based ? 0.0 : fout[x];
      o_ratio[x] = ratio[x];
    }
  }

  // Applies a flow delta from node start upward on the overlay.
  void overlay_shift(int start, double delta) {
    for (int x = start; x != t.root && delta != 0.0; x = t.parent[x]) {
      touch(x);
      o_raw[x] += delta;
      const double nf = std::min(cap, o_raw[x]);
      delta = nf - o_fout[x];
      o_fout[x] = nf;
      o_ratio[x] = g.energy[x] / rate(nf);
    }
  }

  struct Outcome {
    double life = -1.0;
    int count = 0;  // nodes attaining the new bottleneck
  };

  // Effect of switching v's parent to u; pure (overlay only).
  Outcome switch_outcome(int v, int u) {
    ++epoch;
    if (degree_based) {
      const int p = t.parent[v];
      touch(p);
      touch(u);
      if (p != t.root)
        o_ratio[p] = g.energy[p] / (1.0 + model.rx_cost * (children[p] - 1.0));
      if (u != t.root)
        o_ratio[u] = g.energy[u] / (1.0 + model.rx_cost * (children[u] + 1.0));
    } else {
      overlay_shift(t.parent[v], -fout[v]);
      overlay_shift(u, fout[v]);
    }
    Outcome out;
    out.life = kInf;
    for (int x = 0; x < g.n; ++x) {
      if (x == t.root) continue;
      out.life = std::min(out.life, stamp[x] == epoch ? o_ratio[x] : ratio[x]);
    }
    const double band = out.life * (1.0 + kImprovementSlack);
    for (int x = 0; x < g.n; ++x) {
      if (x == t.root) continue;
      if ((stamp[x] == epoch ? o_ratio[x] : ratio[x]) <= band) ++out.count;
    }
    return out;
  }

  // Lexicographic acceptance: a strictly longer lifetime always wins; on a
  // plateau (equal within slack) a strictly smaller bottleneck set wins.
  // Equal-energy instances sit on broad lifetime plateaus, and thinning the
  // tied bottleneck set is what lets later sweeps lift the minimum.
  bool improves(const Outcome& cand) const {
    if (cand.life > cur_life * (1.0 + kImprovementSlack)) return true;
    return cand.life >= cur_life * (1.0 - kImprovementSlack) && cand.count < cur_count;
  }

  static bool outcome_less(const Outcome& a, const Outcome& b) {
    if (b.life > a.life * (1.0 + kImprovementSlack)) return true;
    if (a.life > b.life * (1.0 + kImprovementSlack)) return false;
    return b.count < a.count;
  }

  void commit_switch(int v, int u) {
    const int p = t.parent[v];
    if (!degree_based) {
      double delta = -fout[v];
      for (int x = p; x != t.root && delta != 0.0; x = t.parent[x]) {
        raw[x] += delta;
        const double nf = std::min(cap, raw[x]);
        delta = nf - fout[x];
        fout[x] = nf;
      }
      delta = fout[v];
      for (int x = u; x != t.root && delta != 0.0; x = t.parent[x]) {
        raw[x] += delta;
        const double nf = std::min(cap, raw[x]);
        delta = nf - fout[x];
        fout[x] = nf;
      }
    }
    --children[p];
    ++children[u];
    t.parent[v] = u;

    cur_life = kInf;
    for (int x = 0; x < g.n; ++x) {
      ratio[x] = node_ratio(x);
      cur_life = std::min(cur_life, ratio[x]);
    }
    argmin.clear();
    for (int x = 0; x < g.n; ++x)
      if (x != t.root && ratio[x] <= cur_life * (1.0 + kImprovementSlack))
        argmin.push_back(x);
    cur_count = static_cast<int>(argmin.size());
  }
};

}  // namespace

RoutingTree local_opt(const NetworkGraph& g, const RoutingTree& t0,
                      const QueryModel& model, SearchTrace* trace) {
  LocalSearchState s(g, t0, model);
  const long long sweep_cap = 10LL * g.n * g.n;

  long long sweeps = 0;
  bool moved = true;
  while (moved) {
    if (sweeps >= sweep_cap) {
      if (trace) trace->capped = true;
      break;
    }
    ++sweeps;
    moved = false;
    for (int v = 0; v < g.n; ++v) {
      if (v == g.root) continue;
      if (!s.bottleneck_reachable(v)) continue;
      const int p = s.t.parent[v];
      LocalSearchState::Outcome best;
      int best_u = -1;
      for (int u : g.adj[v]) {
        if (u == p || s.in_subtree(u, v)) continue;
        const auto out = s.switch_outcome(v, u);
        if (best_u < 0 || LocalSearchState::outcome_less(best, out)) {
          best = out;
          best_u = u;
        }
      }
      if (best_u >= 0 && s.improves(best)) {
        s.commit_switch(v, best_u);
        moved = true;
        if (trace) trace->steps.push_back({v, s.cur_life});
      }
    }
  }
  if (trace) trace->sweeps = static_cast<int>(sweeps);
  return s.t;
}

RoutingTree ecrt_local_opt(const NetworkGraph& g, const QueryModel& model,
                           SearchTrace* trace) {
  return local_opt(g, ecrt(g, model), model, trace);
}

}  // namespace lifetree
