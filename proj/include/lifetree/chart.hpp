// Static SVG line charts over sweep result rows.

#pragma once

#include <string>
#include <vector>

#include "lifetree/harness.hpp"

namespace lifetree {

// One line chart: x and y name numeric row columns (n, r, alpha, c_r, ell,
// lifetime, t_lp, ratio); series names the columns whose distinct value
// combinations become separate lines. Points aggregate trials at the same
// x with mean and standard-error bars.
struct ChartSpec {
  std::string x = "r";
  std::string y = "lifetime";
  std::vector<std::string> series = {"algorithm"};
  std::string title;
  std::string out;  // output path; empty renders to string only
};

std::string render_chart(const std::vector<ResultRow>& rows, const ChartSpec& spec);
void emit_chart(const std::vector<ResultRow>& rows, const ChartSpec& spec);

}  // namespace lifetree
