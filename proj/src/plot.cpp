// Copyright 2026 The byzrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "byzrank/errors.hpp"
#include "byzrank/experiment.hpp"

namespace byzrank {

namespace {

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SeriesPoint {
  double x = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;
};

struct Series {
  std::string name;
  std::vector<SeriesPoint> points;  // sorted by x
};

double x_value(const CellAggregate& a, const std::string& x_field) {
  if (x_field == "bf") return a.bf;
  if (x_field == "n") return static_cast<double>(a.n);
  throw ParameterError("plot x field must be bf or n, got '" + x_field + "'");
}

// One series per (strategy, algo), first-appearance order, points sorted.
std::vector<Series> collect_series(const ResultTable& table, const std::string& x_field) {
  if (table.aggregates.empty()) throw ParameterError("nothing to plot: no aggregates");
  std::vector<Series> series;
  for (const CellAggregate& a : table.aggregates) {
    const std::string name = a.strategy + "/" + a.algo;
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.name == name; });
    if (it == series.end()) {
      series.push_back({name, {}});
      it = series.end() - 1;
    }
    it->points.push_back({x_value(a, x_field), a.mean_rel_l2, a.std_rel_l2});
  }
  for (Series& s : series) {
    std::sort(s.points.begin(), s.points.end(),
              [](const SeriesPoint& a, const SeriesPoint& b) { return a.x < b.x; });
  }
  return series;
}

}  // namespace

void write_plot_data(const ResultTable& table, std::ostream& os, const std::string& x_field) {
  const std::vector<Series> series = collect_series(table, x_field);
  std::vector<double> xs;
  for (const Series& s : series) {
    for (const SeriesPoint& p : s.points) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  os << "# " << x_field;
  for (const Series& s : series) os << " " << s.name << ":mean " << s.name << ":std";
  os << "\n";
  for (double x : xs) {
    os << fmtg(x);
    for (const Series& s : series) {
      const auto it = std::find_if(s.points.begin(), s.points.end(),
                                   [&](const SeriesPoint& p) { return p.x == x; });
      if (it == s.points.end()) {
        os << " nan nan";
      } else {
        os << " " << fmt17(it->mean) << " " << fmt17(it->std_dev);
      }
    }
    os << "\n";
  }
}

void write_svg_plot(const ResultTable& table, std::ostream& os, const std::string& x_field,
                    const std::string& title) {
  const std::vector<Series> series = collect_series(table, x_field);
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
  const int palette_size = 8;

  double x_lo = series[0].points[0].x, x_hi = x_lo;
  double y_hi = 0.0;
  for (const Series& s : series) {
    for (const SeriesPoint& p : s.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_hi = std::max(y_hi, p.mean + p.std_dev);
    }
  }
  if (y_hi <= 0.0) y_hi = 1.0;
  y_hi *= 1.05;
  const double y_lo = 0.0;

  const double width = 720, height = 480;
  const double left = 64, right = width - 176, top = 48, bottom = height - 56;
  const auto px = [&](double x) {
    if (x_hi == x_lo) return (left + right) / 2.0;
    return left + (x - x_lo) / (x_hi - x_lo) * (right - left);
  };
  const auto py = [&](double y) { return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"16\">" << title << "</text>\n";

  // Axes with five ticks each.
  os << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
     << bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
     << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_lo + (x_hi - x_lo) * t / 4.0;
    const double fy = y_lo + (y_hi - y_lo) * t / 4.0;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << bottom << "\" x2=\"" << px(fx) << "\" y2=\""
       << bottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(fx) << "\" y=\"" << bottom + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmtg(fx)
       << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << left << "\" y2=\""
       << py(fy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(fy) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmtg(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_field
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << (top + bottom) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (top + bottom) / 2 << ")\">relative L2 error</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % palette_size];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const SeriesPoint& p : s.points) os << px(p.x) << "," << py(p.mean) << " ";
    os << "\"/>\n";
    for (const SeriesPoint& p : s.points) {
      if (p.std_dev > 0.0) {
        os << "<line x1=\"" << px(p.x) << "\" y1=\"" << py(p.mean - p.std_dev) << "\" x2=\""
           << px(p.x) << "\" y2=\"" << py(p.mean + p.std_dev) << "\" stroke=\"" << color
           << "\" stroke-width=\"1\"/>\n";
      }
      os << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.mean) << "\" r=\"2.5\" fill=\""
         << color << "\"/>\n";
    }
    const double ly = top + 16.0 * static_cast<double>(si);
    os << "<line x1=\"" << right + 12 << "\" y1=\"" << ly << "\" x2=\"" << right + 32 << "\" y2=\""
       << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << right + 38 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace byzrank
