// lifetree — maximum-lifetime routing trees for sensor-network queries.
//
// Subcommands: generate, solve, bound, oracle, gadget, sweep, chart.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lifetree/chart.hpp"
#include "lifetree/flowbound.hpp"
#include "lifetree/harness.hpp"
#include "lifetree/json_io.hpp"
#include "lifetree/mdst.hpp"
#include "lifetree/oracle.hpp"
#include "lifetree/rng.hpp"
#include "lifetree/topology.hpp"
#include "lifetree/treesearch.hpp"

using namespace lifetree;

namespace {

QueryModel parse_query(const std::string& spec, double rx_cost, bool include_rx) {
  if (spec == "full") return QueryModel::fully_aggregated(rx_cost);
  if (spec == "unagg") return QueryModel::unaggregated(include_rx, rx_cost);
  if (spec.rfind("partial:", 0) == 0)
    return QueryModel::partially_aggregated(std::stoi(spec.substr(8)), include_rx, rx_cost);
  throw CLI::ValidationError("--query", "expected full | unagg | partial:<ell>");
}

QueryKind parse_query_kind(const std::string& spec) {
  if (spec == "full") return QueryKind::FullyAggregated;
  if (spec == "unagg") return QueryKind::Unaggregated;
  if (spec == "partial") return QueryKind::PartiallyAggregated;
  throw CLI::ValidationError("--query", "expected full | unagg | partial");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    out.push_back(s.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-lifetime routing trees for sensor-network queries"};
  app.require_subcommand(1);

  // ---- generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "generate a random unit-disk network");
  int gen_n = 100;
  double gen_area = 100.0, gen_r = 2.0, gen_alpha = 1.0, gen_mean = 1000.0;
  std::uint64_t gen_seed = 42;
  std::string gen_root_pos = "random", gen_out;
  bool gen_connected = false;
  gen->add_option("--n", gen_n, "node count (including the root)");
  gen->add_option("--area", gen_area, "side of the square area");
  gen->add_option("--r", gen_r, "scaled radio range l_r / sqrt(area^2/n)");
  gen->add_option("--alpha", gen_alpha, "energy ratio e_max/e_min");
  gen->add_option("--mean-energy", gen_mean, "mean node energy");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--root-pos", gen_root_pos, "random | corner | center")
      ->check(CLI::IsMember({"random", "corner", "center"}));
  gen->add_flag("--require-connected", gen_connected,
                "resample with derived seeds until connected");
  gen->add_option("--out", gen_out, "output graph file")->required();

  // ---- solve -------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "build a routing tree");
  std::string solve_alg = "ecrt", solve_query = "unagg", solve_graph, solve_out,
              solve_tie = "lowest-id", solve_init;
  double solve_rx = 0.5;
  bool solve_include_rx = false, solve_scan_all = false;
  solve->add_option("--algorithm", solve_alg,
                    "min-hop | ecrt | local-opt | ecrt+lo | aggregated-tree")
      ->check(CLI::IsMember({"min-hop", "ecrt", "local-opt", "ecrt+lo", "aggregated-tree"}));
  solve->add_option("--query", solve_query, "full | unagg | partial:<ell>");
  solve->add_option("--rx-cost", solve_rx, "energy to receive one data unit");
  solve->add_flag("--include-rx", solve_include_rx,
                  "charge reception in flow-query rates");
  solve->add_option("--graph", solve_graph, "input graph file")->required();
  solve->add_option("--out", solve_out, "output tree file");
  solve->add_option("--tie-break", solve_tie,
                    "min-hop parent ties: lowest-id | random:<seed>");
  solve->add_option("--init", solve_init,
                    "initial tree file for local-opt (default: min-hop)");
  solve->add_flag("--scan-all", solve_scan_all,
                  "aggregated-tree: evaluate every candidate target");

  // ---- bound -------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "flow-relaxation lifetime upper bound");
  std::string bound_graph;
  double bound_tol = 1e-6;
  bound->add_option("--graph", bound_graph, "input graph file")->required();
  bound->add_option("--rel-tol", bound_tol, "bisection tolerance relative to e_min");

  // ---- oracle ------------------------------------------------------------
  auto* orac = app.add_subcommand("oracle", "exhaustive optimum on small graphs");
  std::string orac_graph, orac_query = "unagg";
  double orac_rx = 0.5;
  bool orac_include_rx = false;
  int orac_max_nodes = 10;
  long long orac_budget = 10'000'000;
  orac->add_option("--graph", orac_graph, "input graph file")->required();
  orac->add_option("--query", orac_query, "full | unagg | partial:<ell>");
  orac->add_option("--rx-cost", orac_rx, "energy to receive one data unit");
  orac->add_flag("--include-rx", orac_include_rx, "charge reception in flow rates");
  orac->add_option("--max-nodes", orac_max_nodes, "node-count guard");
  orac->add_option("--budget", orac_budget, "enumeration work budget");

  // ---- gadget ------------------------------------------------------------
  auto* gadget = app.add_subcommand("gadget", "set-cover reduction graph");
  std::string gadget_sets, gadget_out;
  int gadget_p = 1;
  gadget->add_option("--sets", gadget_sets,
                     "JSON file or inline: {\"n_elements\": n, \"sets\": [[...], ...]} "
                     "(0-based element ids)")
      ->required();
  gadget->add_option("--p", gadget_p, "cover size bound")->required();
  gadget->add_option("--out", gadget_out, "output graph file")->required();

  // ---- sweep -------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "seeded experiment sweep to CSV");
  std::string sweep_preset, sweep_out, sweep_query = "unagg";
  std::vector<int> sweep_n, sweep_ell;
  std::vector<double> sweep_r, sweep_alpha;
  double sweep_area = 100.0, sweep_mean = 1000.0, sweep_rx = 0.5;
  std::string sweep_algorithms;
  int sweep_trials = -1, sweep_threads = 0;
  std::uint64_t sweep_seed = 42;
  bool sweep_lp = false;
  sweep->add_option("--preset", sweep_preset, "fig4 | fig5 | fig6 | fig7 | fig8");
  sweep->add_option("--n", sweep_n, "node counts");
  sweep->add_option("--area", sweep_area, "side of the square area");
  sweep->add_option("--r", sweep_r, "scaled radio ranges");
  sweep->add_option("--alpha", sweep_alpha, "energy ratios");
  sweep->add_option("--mean-energy", sweep_mean, "mean node energy");
  sweep->add_option("--rx-cost", sweep_rx, "receive cost c_r");
  sweep->add_option("--query", sweep_query, "full | unagg | partial");
  sweep->add_option("--ell", sweep_ell, "flow caps for partial queries");
  sweep->add_option("--algorithms", sweep_algorithms, "comma-separated list");
  sweep->add_flag("--with-lp", sweep_lp, "attach the flow upper bound to rows");
  sweep->add_option("--trials", sweep_trials, "trials per parameter point");
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--threads", sweep_threads, "worker threads (0: auto)");
  sweep->add_option("--out", sweep_out, "output CSV file")->required();

  // ---- chart -------------------------------------------------------------
  auto* chart = app.add_subcommand("chart", "render an SVG line chart from CSV");
  std::string chart_in, chart_out, chart_x = "r", chart_y = "lifetime",
              chart_series = "algorithm", chart_title;
  std::vector<std::string> chart_filters;
  chart->add_option("--in", chart_in, "input CSV file")->required();
  chart->add_option("--x", chart_x, "x column");
  chart->add_option("--y", chart_y, "y column (lifetime, t_lp, ratio, ...)");
  chart->add_option("--series", chart_series, "comma-separated series columns");
  chart->add_option("--filter", chart_filters,
                    "keep rows with column=value (repeatable)");
  chart->add_option("--title", chart_title, "chart title");
  chart->add_option("--out", chart_out, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::uint64_t seed = gen_seed;
      NetworkGraph g;
      for (int attempt = 0;; ++attempt) {
        const auto pseed = mix_seed(seed, 2ULL * attempt);
        const auto eseed = mix_seed(seed, 2ULL * attempt + 1);
        auto placement = generate_placement(gen_n, gen_area, pseed);
        if (gen_root_pos == "corner") placement.coords[0] = {0.0, 0.0};
        if (gen_root_pos == "center")
          placement.coords[0] = {gen_area / 2.0, gen_area / 2.0};
        const auto energies = assign_energies(gen_n, {gen_alpha, gen_mean, eseed});
        g = build_disk_graph(placement, range_for_scaled(gen_r, gen_area, gen_n),
                             energies, 0);
        if (!gen_connected || is_connected(g)) {
          if (attempt > 0)
            std::cerr << "resampled " << attempt << " disconnected draw(s)\n";
          break;
        }
        if (attempt >= 1000) throw std::runtime_error("no connected sample found");
      }
      save_graph(g, gen_out);
      std::cout << "{\"n\": " << g.n << ", \"edges\": " << g.edges.size()
                << ", \"connected\": " << (is_connected(g) ? "true" : "false")
                << "}\n";
    } else if (*solve) {
      const auto g = load_graph(solve_graph);
      const auto model = parse_query(solve_query, solve_rx, solve_include_rx);
      RoutingTree tree;
      if (solve_alg == "min-hop") {
        if (solve_tie == "lowest-id") {
          tree = min_hop_tree(g);
        } else if (solve_tie.rfind("random:", 0) == 0) {
          tree = min_hop_tree(g, TieBreak::Random, std::stoull(solve_tie.substr(7)));
        } else {
          throw CLI::ValidationError("--tie-break", "expected lowest-id | random:<seed>");
        }
      } else if (solve_alg == "ecrt") {
        tree = ecrt(g, model);
      } else if (solve_alg == "local-opt") {
        const RoutingTree init =
            solve_init.empty() ? min_hop_tree(g) : load_tree(solve_init);
        tree = local_opt(g, init, model);
      } else if (solve_alg == "ecrt+lo") {
        tree = ecrt_local_opt(g, model);
      } else {  // aggregated-tree
        if (model.kind != QueryKind::FullyAggregated)
          throw CLI::ValidationError("--query", "aggregated-tree requires --query full");
        tree = aggregated_tree(g, solve_rx,
                               solve_scan_all ? ScanMode::All : ScanMode::Auto)
                   .tree;
      }
      if (!solve_out.empty()) save_tree(tree, solve_out);
      std::cout << report_to_json(lifetime(tree, g, model));
    } else if (*bound) {
      const auto g = load_graph(bound_graph);
      const auto res = lp_upper_bound(g, bound_tol);
      nlohmann::json j = {{"t_lp", res.t_lp}, {"bottleneck", res.bottleneck}};
      std::cout << j.dump(2) << "\n";
    } else if (*orac) {
      const auto g = load_graph(orac_graph);
      const auto model = parse_query(orac_query, orac_rx, orac_include_rx);
      const auto res = brute_force_optimal(
          g, model, {.max_nodes = orac_max_nodes, .budget = orac_budget});
      nlohmann::json parents = nlohmann::json::array();
      for (int p : res.tree.parent)
        parents.push_back(p == kNoParent ? nlohmann::json(nullptr) : nlohmann::json(p));
      nlohmann::json j = {{"t_opt", res.lifetime},
                          {"trees_seen", res.trees_seen},
                          {"tree", {{"root", res.tree.root}, {"parent", parents}}}};
      std::cout << j.dump(2) << "\n";
    } else if (*gadget) {
      std::string text = gadget_sets;
      if (!text.empty() && text[0] != '{') {
        std::ifstream in(gadget_sets);
        if (!in) throw std::runtime_error("cannot open sets file: " + gadget_sets);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      }
      const auto j = nlohmann::json::parse(text);
      SetCoverInstance inst;
      inst.n_elements = j.at("n_elements").get<int>();
      inst.sets = j.at("sets").get<std::vector<std::vector<int>>>();
      inst.p = gadget_p;
      save_graph(set_cover_gadget(inst), gadget_out);
      std::cout << "{\"nodes\": " << 3 + 2 * inst.sets.size() + inst.n_elements
                << ", \"has_cover\": " << (has_cover_of_size(inst) ? "true" : "false")
                << "}\n";
    } else if (*sweep) {
      SweepConfig cfg;
      if (!sweep_preset.empty()) cfg = preset(sweep_preset);
      if (!sweep_n.empty()) cfg.n_values = sweep_n;
      if (sweep->count("--area")) cfg.area_side = sweep_area;
      if (!sweep_r.empty()) cfg.r_values = sweep_r;
      if (!sweep_alpha.empty()) cfg.alpha_values = sweep_alpha;
      if (sweep->count("--mean-energy")) cfg.mean_energy = sweep_mean;
      if (sweep->count("--rx-cost")) cfg.rx_cost = sweep_rx;
      if (sweep->count("--query")) cfg.query = parse_query_kind(sweep_query);
      if (!sweep_ell.empty()) cfg.ell_values = sweep_ell;
      if (!sweep_algorithms.empty()) cfg.algorithms = split_csv(sweep_algorithms);
      if (sweep->count("--with-lp")) cfg.with_lp = sweep_lp;
      if (sweep_trials > 0) cfg.trials = sweep_trials;
      cfg.master_seed = sweep_seed;
      cfg.threads = sweep_threads;
      const auto rows = run_sweep(cfg);
      save_csv(rows, sweep_out);
      std::cout << "{\"rows\": " << rows.size() << ", \"out\": \"" << sweep_out
                << "\"}\n";
    } else if (*chart) {
      auto rows = load_csv(chart_in);
      for (const auto& f : chart_filters) {
        const auto eq = f.find('=');
        if (eq == std::string::npos)
          throw CLI::ValidationError("--filter", "expected column=value");
        const std::string col = f.substr(0, eq), val = f.substr(eq + 1);
        std::vector<ResultRow> kept;
        for (const auto& row : rows) {
          std::string cell;
          if (col == "algorithm") {
            cell = row.algorithm;
          } else if (col == "query") {
            cell = row.query;
          } else if (col == "n") {
            cell = std::to_string(row.n);
          } else if (col == "ell") {
            cell = std::to_string(row.ell);
          } else if (col == "alpha") {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", row.alpha);
            cell = buf;
          } else {
            throw CLI::ValidationError("--filter", "unsupported column: " + col);
          }
          if (cell == val) kept.push_back(row);
        }
        rows = std::move(kept);
      }
      ChartSpec spec;
      spec.x = chart_x;
      spec.y = chart_y;
      spec.series = split_csv(chart_series);
      spec.title = chart_title;
      spec.out = chart_out;
      emit_chart(rows, spec);
      std::cout << "{\"out\": \"" << chart_out << "\"}\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
