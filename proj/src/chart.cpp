#include "lifetree/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lifetree {

namespace {

double column_value(const ResultRow& row, const std::string& col) {
  if (col == "n") return row.n;
  if (col == "r") return row.r;
  if (col == "alpha") return row.alpha;
  if (col == "c_r") return row.rx_cost;
  if (col == "ell") return row.ell;
  if (col == "lifetime") return row.lifetime;
  if (col == "t_lp") return row.t_lp;
  if (col == "ratio") return row.lifetime / row.t_lp;
  if (col == "resamples") return row.resamples;
  throw std::invalid_argument("unknown numeric column: " + col);
}

std::string column_text(const ResultRow& row, const std::string& col) {
  if (col == "algorithm") return row.algorithm;
  if (col == "query") return row.query;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", column_value(row, col));
  return std::string(col) + "=" + buf;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct SeriesPoint {
  double x;
  double mean;
  double se;
};

}  // namespace

std::string render_chart(const std::vector<ResultRow>& rows, const ChartSpec& spec) {
  // Group rows into series, then aggregate trials per x value.
  std::map<std::string, std::map<double, std::vector<double>>> grouped;
  for (const auto& row : rows) {
    std::string key;
    for (const auto& col : spec.series) {
      if (!key.empty()) key += ", ";
      key += column_text(row, col);
    }
    const double x = column_value(row, spec.x);
    const double y = column_value(row, spec.y);
    if (std::isnan(x) || std::isnan(y)) continue;
    grouped[key][x].push_back(y);
  }
  if (grouped.empty()) throw std::invalid_argument("chart: empty selection");

  std::map<std::string, std::vector<SeriesPoint>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& [key, by_x] : grouped) {
    auto& pts = series[key];
    for (const auto& [x, ys] : by_x) {
      double sum = 0.0;
      for (double y : ys) sum += y;
      const double mean = sum / ys.size();
      double ss = 0.0;
      for (double y : ys) ss += (y - mean) * (y - mean);
      const double se =
          ys.size() > 1 ? std::sqrt(ss / (ys.size() - 1) / ys.size()) : 0.0;
      pts.push_back({x, mean, se});
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, mean - se);
      ymax = std::max(ymax, mean + se);
    }
  }
  if (xmax <= xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax <= ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  ymin = std::min(0.0, ymin);
  ymax += 0.05 * (ymax - ymin);

  const double W = 720, H = 480;
  const double L = 70, R = 20, T = spec.title.empty() ? 20 : 44, B = 50;
  auto X = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto Y = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    svg << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";

  // axes
  svg << "<line x1=\"" << num(L) << "\" y1=\"" << num(H - B) << "\" x2=\"" << num(W - R)
      << "\" y2=\"" << num(H - B) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(L) << "\" y1=\"" << num(T) << "\" x2=\"" << num(L)
      << "\" y2=\"" << num(H - B) << "\" stroke=\"black\"/>\n";

  const int nticks = 6;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    svg << "<line x1=\"" << num(X(fx)) << "\" y1=\"" << num(H - B) << "\" x2=\""
        << num(X(fx)) << "\" y2=\"" << num(H - B + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(X(fx)) << "\" y=\"" << num(H - B + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(fx) << "</text>\n";
    svg << "<line x1=\"" << num(L - 5) << "\" y1=\"" << num(Y(fy)) << "\" x2=\""
        << num(L) << "\" y2=\"" << num(Y(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(L - 8) << "\" y=\"" << num(Y(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(fy) << "</text>\n";
  }
  svg << "<text x=\"" << num((L + W - R) / 2) << "\" y=\"" << num(H - 10)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << spec.x << "</text>\n";
  svg << "<text x=\"16\" y=\"" << num((T + H - B) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " << num((T + H - B) / 2) << ")\">" << spec.y
      << "</text>\n";

  int idx = 0;
  for (const auto& [key, pts] : series) {
    const char* color = kPalette[idx % 8];
    std::ostringstream line;
    for (std::size_t i = 0; i < pts.size(); ++i)
      line << (i ? " " : "") << num(X(pts[i].x)) << "," << num(Y(pts[i].mean));
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
           "points=\"" << line.str() << "\"/>\n";
    for (const auto& p : pts) {
      if (p.se > 0.0) {
        svg << "<line x1=\"" << num(X(p.x)) << "\" y1=\"" << num(Y(p.mean - p.se))
            << "\" x2=\"" << num(X(p.x)) << "\" y2=\"" << num(Y(p.mean + p.se))
            << "\" stroke=\"" << color << "\"/>\n";
        for (double y : {p.mean - p.se, p.mean + p.se})
          svg << "<line x1=\"" << num(X(p.x) - 3) << "\" y1=\"" << num(Y(y))
              << "\" x2=\"" << num(X(p.x) + 3) << "\" y2=\"" << num(Y(y))
              << "\" stroke=\"" << color << "\"/>\n";
      }
      svg << "<circle cx=\"" << num(X(p.x)) << "\" cy=\"" << num(Y(p.mean))
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    // legend entry
    const double ly = T + 16 + 18 * idx;
    svg << "<line x1=\"" << num(W - R - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(W - R - 126) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(W - R - 120) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << key << "</text>\n";
    ++idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_chart(const std::vector<ResultRow>& rows, const ChartSpec& spec) {
  const std::string svg = render_chart(rows, spec);
  if (spec.out.empty()) throw std::invalid_argument("chart: no output path");
  std::ofstream out(spec.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + spec.out);
  out << svg;
}

}  // namespace lifetree
