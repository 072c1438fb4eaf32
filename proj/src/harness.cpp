#include "lifetree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lifetree/flowbound.hpp"
#include "lifetree/mdst.hpp"
#include "lifetree/rng.hpp"
#include "lifetree/topology.hpp"
#include "lifetree/treesearch.hpp"

namespace lifetree {

namespace {

const std::set<std::string> kFlowAlgorithms = {"min-hop", "ecrt", "local-opt", "ecrt+lo"};

struct Point {
  int n;
  double r;
  double alpha;
  int ell;  // -1 when not applicable
};

QueryModel model_for(const SweepConfig& cfg, int ell) {
  switch (cfg.query) {
    case QueryKind::FullyAggregated:
      return QueryModel::fully_aggregated(cfg.rx_cost);
    case QueryKind::Unaggregated:
      return QueryModel::unaggregated(cfg.include_rx, cfg.rx_cost);
    case QueryKind::PartiallyAggregated:
      return QueryModel::partially_aggregated(ell, cfg.include_rx, cfg.rx_cost);
  }
  throw std::logic_error("unreachable");
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("sweep needs trials >= 1");
  if (cfg.n_values.empty() || cfg.r_values.empty() || cfg.alpha_values.empty())
    throw std::invalid_argument("sweep needs n, r and alpha values");
  if (cfg.algorithms.empty()) throw std::invalid_argument("sweep needs algorithms");
  if (cfg.query == QueryKind::PartiallyAggregated && cfg.ell_values.empty())
    throw std::invalid_argument("partial query sweep needs ell values");

  for (const auto& a : cfg.algorithms) {
    if (a == "aggregated-tree") {
      if (cfg.query != QueryKind::FullyAggregated)
        throw std::invalid_argument(
            "aggregated-tree runs fully aggregated queries only");
    } else if (kFlowAlgorithms.count(a)) {
      if (a != "min-hop" && cfg.query == QueryKind::FullyAggregated)
        throw std::invalid_argument(
            a + " runs unaggregated or partially aggregated queries only");
    } else {
      throw std::invalid_argument("unknown algorithm: " + a);
    }
  }
  if (cfg.with_lp && cfg.query == QueryKind::FullyAggregated)
    throw std::invalid_argument("the flow upper bound applies to flow queries only");
}

RoutingTree run_algorithm(const std::string& name, const NetworkGraph& g,
                          const QueryModel& model, double rx_cost) {
  if (name == "min-hop") return min_hop_tree(g);
  if (name == "ecrt") return ecrt(g, model);
  if (name == "local-opt") return local_opt(g, min_hop_tree(g), model);
  if (name == "ecrt+lo") return ecrt_local_opt(g, model);
  if (name == "aggregated-tree") return aggregated_tree(g, rx_cost).tree;
  throw std::invalid_argument("unknown algorithm: " + name);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LIFETREE_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);

  std::vector<Point> points;
  const std::vector<int> ells =
      cfg.query == QueryKind::PartiallyAggregated ? cfg.ell_values : std::vector<int>{-1};
  for (int n : cfg.n_values)
    for (double alpha : cfg.alpha_values)
      for (int ell : ells)
        for (double r : cfg.r_values) points.push_back({n, r, alpha, ell});

  struct Task {
    int point_idx;
    int trial;
  };
  std::vector<Task> tasks;
  for (int p = 0; p < static_cast<int>(points.size()); ++p)
    for (int t = 0; t < cfg.trials; ++t) tasks.push_back({p, t});

  std::vector<std::vector<ResultRow>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mu;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || failed.load()) break;
      const auto [pi, trial] = tasks[i];
      const Point& pt = points[pi];
      try {
        const std::uint64_t trial_seed =
            mix_seed(mix_seed(cfg.master_seed, static_cast<std::uint64_t>(pi)),
                     static_cast<std::uint64_t>(trial));

        // Sample until connected; each attempt uses fresh substreams.
        NetworkGraph g;
        int attempt = 0;
        while (true) {
          const auto pseed = mix_seed(trial_seed, 2ULL * attempt);
          const auto eseed = mix_seed(trial_seed, 2ULL * attempt + 1);
          const auto placement = generate_placement(pt.n, cfg.area_side, pseed);
          const auto energies =
              assign_energies(pt.n, {pt.alpha, cfg.mean_energy, eseed});
          const double l_r = range_for_scaled(pt.r, cfg.area_side, pt.n);
          g = build_disk_graph(placement, l_r, energies, 0);
          if (is_connected(g)) break;
          if (++attempt > cfg.max_resamples)
            throw std::runtime_error("no connected sample after " +
                                     std::to_string(cfg.max_resamples) + " attempts");
        }

        const QueryModel model = model_for(cfg, pt.ell);
        const double t_lp = cfg.with_lp ? lp_upper_bound(g).t_lp
                                        : std::numeric_limits<double>::quiet_NaN();

        for (const auto& alg : cfg.algorithms) {
          const auto t0 = std::chrono::steady_clock::now();
          const RoutingTree tree = run_algorithm(alg, g, model, cfg.rx_cost);
          const double life = lifetime(tree, g, model).lifetime;
          const auto t1 = std::chrono::steady_clock::now();

          ResultRow row;
          row.seed = trial_seed;
          row.n = pt.n;
          row.r = pt.r;
          row.alpha = pt.alpha;
          row.rx_cost = cfg.rx_cost;
          row.query = model.name();
          row.ell = pt.ell;
          row.algorithm = alg;
          row.lifetime = life;
          row.t_lp = t_lp;
          row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          row.resamples = attempt;
          slots[i].push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        error_message = e.what();
        failed.store(true);
      }
    }
  };

  const int threads = std::min<int>(resolve_threads(cfg.threads),
                                    static_cast<int>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("sweep failed: " + error_message);

  std::vector<ResultRow> rows;
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "# lifetree-csv v1\n";
  out << "seed,n,r,alpha,c_r,query,ell,algorithm,lifetime,t_lp,runtime_ms,resamples\n";
  for (const auto& row : rows) {
    out << row.seed << ',' << row.n << ',' << fmt_double(row.r) << ','
        << fmt_double(row.alpha) << ',' << fmt_double(row.rx_cost) << ','
        << row.query << ',' << (row.ell >= 0 ? std::to_string(row.ell) : "") << ','
        << row.algorithm << ',' << fmt_double(row.lifetime) << ','
        << fmt_double(row.t_lp) << ',' << fmt_double(row.runtime_ms) << ','
        << row.resamples << '\n';
  }
  return out.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    cells.resize(12);
    ResultRow row;
    row.seed = std::stoull(cells[0]);
    row.n = std::stoi(cells[1]);
    row.r = std::stod(cells[2]);
    row.alpha = std::stod(cells[3]);
    row.rx_cost = std::stod(cells[4]);
    row.query = cells[5];
    row.ell = cells[6].empty() ? -1 : std::stoi(cells[6]);
    row.algorithm = cells[7];
    row.lifetime = std::stod(cells[8]);
    row.t_lp = cells[9].empty() ? std::numeric_limits<double>::quiet_NaN()
                                : std::stod(cells[9]);
    row.runtime_ms = cells[10].empty() ? 0.0 : std::stod(cells[10]);
    row.resamples = cells[11].empty() ? 0 : std::stoi(cells[11]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void save_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << rows_to_csv(rows);
}

std::vector<ResultRow> load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return rows_from_csv(text);
}

std::vector<RatioStat> performance_ratio(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("performance_ratio: no rows");
  std::vector<std::pair<std::pair<int, std::string>, std::vector<double>>> groups;
  for (const auto& row : rows) {
    if (std::isnan(row.t_lp))
      throw std::invalid_argument("performance_ratio: row without t_lp");
    const std::pair<int, std::string> key{row.n, row.algorithm};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.push_back({key, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(row.lifetime / row.t_lp);
  }

  std::vector<RatioStat> stats;
  for (const auto& [key, vals] : groups) {
    RatioStat s;
    s.n = key.first;
    s.algorithm = key.second;
    s.count = static_cast<int>(vals.size());
    double sum = 0.0;
    for (double v : vals) sum += v;
    s.mean = sum / s.count;
    double ss = 0.0;
    for (double v : vals) ss += (v - s.mean) * (v - s.mean);
    s.stderr_ = s.count > 1 ? std::sqrt(ss / (s.count - 1) / s.count) : 0.0;
    stats.push_back(std::move(s));
  }
  std::sort(stats.begin(), stats.end(), [](const RatioStat& a, const RatioStat& b) {
    return a.n != b.n ? a.n < b.n : a.algorithm < b.algorithm;
  });
  return stats;
}

std::vector<std::string> preset_names() { return {"fig4", "fig5", "fig6", "fig7", "fig8"}; }

SweepConfig preset(const std::string& name) {
  SweepConfig cfg;
  auto r_grid = [](double lo, double hi, double step) {
    std::vector<double> out;
    for (double r = lo; r <= hi + 1e-9; r += step) out.push_back(r);
    return out;
  };
  if (name == "fig4") {
    cfg.n_values = {50};
    cfg.r_values = r_grid(1.5, 4.0, 0.25);
    cfg.alpha_values = {1.0, 4.0};
    cfg.query = QueryKind::FullyAggregated;
    cfg.algorithms = {"min-hop", "aggregated-tree"};
  } else if (name == "fig5") {
    cfg.n_values = {400};
    cfg.r_values = r_grid(1.5, 4.0, 0.25);
    cfg.alpha_values = {1.0};
    cfg.query = QueryKind::Unaggregated;
    cfg.algorithms = {"min-hop", "ecrt", "local-opt", "ecrt+lo"};
    cfg.with_lp = true;
  } else if (name == "fig6") {
    cfg.n_values = {400};
    cfg.r_values = r_grid(1.5, 4.0, 0.5);
    cfg.alpha_values = {1.0, 2.0, 4.0};
    cfg.query = QueryKind::Unaggregated;
    cfg.algorithms = {"min-hop", "ecrt", "local-opt"};
  } else if (name == "fig7") {
    cfg.n_values = {50, 100, 200, 400};
    cfg.r_values = {3.0};
    cfg.alpha_values = {1.0};
    cfg.query = QueryKind::Unaggregated;
    cfg.algorithms = {"ecrt", "local-opt", "ecrt+lo"};
    cfg.with_lp = true;
  } else if (name == "fig8") {
    cfg.n_values = {100};
    cfg.r_values = {3.0};
    cfg.alpha_values = {1.0, 4.0};
    cfg.query = QueryKind::PartiallyAggregated;
    cfg.ell_values = {1, 2, 5, 10, 20, 50, 100};
    cfg.algorithms = {"min-hop", "ecrt", "local-opt", "ecrt+lo"};
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return cfg;
}

}  // namespace lifetree
