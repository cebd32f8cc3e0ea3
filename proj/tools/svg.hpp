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

#ifndef SGRL_TOOLS_SVG_HPP_
#define SGRL_TOOLS_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sgrl::tools {

// Two-color heatmap of a {-1, 0, 1} grid; row 0 is drawn at the bottom so
// the vertical axis increases upward. The marker sits at (mx, my) in [0,1]^2.
std::string heatmap_svg(const Eigen::MatrixXi& grid, double mx, double my,
                        const std::string& title);

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// Polyline plot. With log_y, values are clamped below at y_floor before
// taking log10.
std::string line_plot_svg(const std::vector<Series>& series, bool log_y,
                          double y_floor, const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label);

}  // namespace sgrl::tools

#endif  // SGRL_TOOLS_SVG_HPP_
