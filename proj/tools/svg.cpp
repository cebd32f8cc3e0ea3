// Copyright 2026 The sgrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgrl/numeric.hpp"

namespace sgrl::tools {
namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  // Two decimals are plenty for drawing coordinates.
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

}  // namespace

std::string heatmap_svg(const Eigen::MatrixXi& grid, double mx, double my,
                        const std::string& title) {
  const int rows = static_cast<int>(grid.rows());
  const int cols = static_cast<int>(grid.cols());
  const double size = 400.0;
  const double margin = 40.0;
  const double cw = size / cols;
  const double ch = size / rows;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
     << num(size + 2 * margin) << ' ' << num(size + 2 * margin) << "\">\n";
  os << "<title>" << escape(title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(size + 2 * margin)
     << "\" height=\"" << num(size + 2 * margin) << "\" fill=\"white\"/>\n";
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = grid(i, j);
      const char* fill = v < 0 ? "#f2d024" : (v > 0 ? "#4b2c6f" : "#9e9e9e");
      os << "<rect x=\"" << num(margin + j * cw) << "\" y=\""
         << num(margin + (rows - 1 - i) * ch) << "\" width=\"" << num(cw)
         << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "</g>\n";
  os << "<circle cx=\"" << num(margin + mx * size) << "\" cy=\""
     << num(margin + (1.0 - my) * size)
     << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << num(margin + size / 2) << "\" y=\"" << num(margin / 2)
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  os << "<text x=\"" << num(margin + size / 2) << "\" y=\""
     << num(size + 1.7 * margin)
     << "\" text-anchor=\"middle\" font-size=\"12\">x1</text>\n";
  os << "<text x=\"" << num(margin / 3) << "\" y=\"" << num(margin + size / 2)
     << "\" font-size=\"12\">y1</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string line_plot_svg(const std::vector<Series>& series, bool log_y,
                          double y_floor, const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label) {
  const double width = 600.0;
  const double height = 400.0;
  const double left = 70.0;
  const double right = 20.0;
  const double top = 40.0;
  const double bottom = 50.0;
  auto ty = [&](double y) {
    return log_y ? std::log10(std::max(y, y_floor)) : y;
  };
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY,
         y_max = -INFINITY;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(y)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, ty(y));
      y_max = std::max(y_max, ty(y));
    }
  }
  if (!(x_min < x_max)) {
    x_min = std::isfinite(x_min) ? x_min - 1 : 0;
    x_max = x_min + 2;
  }
  if (!(y_min < y_max)) {
    y_min = std::isfinite(y_min) ? y_min - 1 : 0;
    y_max = y_min + 2;
  }
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) {
    return top + (1.0 - (ty(y) - y_min) / (y_max - y_min)) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
     << num(width) << ' ' << num(height) << "\">\n";
  os << "<title>" << escape(title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
     << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const Series& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(y)) continue;
      if (!first) os << ' ';
      os << num(px(x)) << ',' << num(py(y));
      first = false;
    }
    os << "\"/>\n";
  }
  // Axis extremes as tick labels.
  const auto label = [&](double v) {
    return log_y ? "1e" + format_double(std::round(v * 100) / 100)
                 : format_double(v);
  };
  os << "<text x=\"" << num(left - 5) << "\" y=\"" << num(top + 4)
     << "\" text-anchor=\"end\" font-size=\"11\">" << label(y_max)
     << "</text>\n";
  os << "<text x=\"" << num(left - 5) << "\" y=\"" << num(top + ph)
     << "\" text-anchor=\"end\" font-size=\"11\">" << label(y_min)
     << "</text>\n";
  os << "<text x=\"" << num(left) << "\" y=\"" << num(top + ph + 15)
     << "\" font-size=\"11\">" << format_double(x_min) << "</text>\n";
  os << "<text x=\"" << num(left + pw) << "\" y=\"" << num(top + ph + 15)
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(x_max)
     << "</text>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 12)
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label)
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << num(top + ph / 2)
     << "\" font-size=\"12\" transform=\"rotate(-90 14 " << num(top + ph / 2)
     << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(top / 2 + 5)
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  double ly = top + 15;
  for (const Series& s : series) {
    os << "<line x1=\"" << num(left + pw - 120) << "\" y1=\"" << num(ly)
       << "\" x2=\"" << num(left + pw - 100) << "\" y2=\"" << num(ly)
       << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(left + pw - 95) << "\" y=\"" << num(ly + 4)
       << "\" font-size=\"11\">" << escape(s.name) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sgrl::tools
