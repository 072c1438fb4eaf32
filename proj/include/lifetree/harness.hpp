// Seeded experiment sweeps, CSV emission and summary statistics.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lifetree/routing_tree.hpp"

namespace lifetree {

// One experiment grid: the cartesian product of n, r, alpha (and ell for
// partial queries), each point sampled `trials` times with seeds derived
// from master_seed.
struct SweepConfig {
  std::vector<int> n_values;
  double area_side = 100.0;
  std::vector<double> r_values;        // scaled radio ranges
  std::vector<double> alpha_values;    // energy ratios
  double mean_energy = 1000.0;
  double rx_cost = 0.5;
  QueryKind query = QueryKind::Unaggregated;
  bool include_rx = false;
  std::vector<int> ell_values;         // partial queries only
  std::vector<std::string> algorithms; // min-hop | ecrt | local-opt | ecrt+lo | aggregated-tree
  bool with_lp = false;                // attach the flow upper bound to each row
  int trials = 20;
  std::uint64_t master_seed = 42;
  int threads = 0;                     // 0: LIFETREE_THREADS or hardware
  int max_resamples = 1000;
};

// One algorithm run at one parameter point. Averaging happens downstream.
struct ResultRow {
  std::uint64_t seed = 0;  // derived trial seed
  int n = 0;
  double r = 0.0;
  double alpha = 1.0;
  double rx_cost = 0.5;
  std::string query;
  int ell = -1;          // -1: not applicable
  std::string algorithm;
  double lifetime = 0.0;
  double t_lp = 0.0;     // NaN when not computed
  double runtime_ms = 0.0;
  int resamples = 0;
};

// Validates the configuration (unknown algorithms and infeasible
// query/algorithm pairings fail before any trial runs), then executes all
// (point, trial) tasks over a worker pool. Output order is by (point,
// trial, algorithm) regardless of thread count.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

// CSV with a version comment, a header row, and one line per row. The
// runtime_ms column is wall-clock and not reproducible; everything else is.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_csv(const std::string& text);
void save_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> load_csv(const std::string& path);

// Mean and standard error of lifetime / t_lp per (n, algorithm) group.
struct RatioStat {
  int n = 0;
  std::string algorithm;
  double mean = 0.0;
  double stderr_ = 0.0;
  int count = 0;
};
std::vector<RatioStat> performance_ratio(const std::vector<ResultRow>& rows);

// Experiment presets mirroring the published figures.
SweepConfig preset(const std::string& name);  // fig4 | fig5 | fig6 | fig7 | fig8
std::vector<std::string> preset_names();

}  // namespace lifetree
