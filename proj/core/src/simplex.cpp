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

#include "sgrl/simplex.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace sgrl {

Vector project_simplex(const Vector& v) {
  const int n = static_cast<int>(v.size());
  if (n == 0) throw StructuralError("cannot project an empty vector");
  if (!v.allFinite()) throw DomainError("project_simplex needs finite input");
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (int k = 0; k < n; ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / (k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  Vector out = (v.array() - theta).max(0.0);
  // Renormalize the rounding residue onto the support.
  const double total = out.sum();
  if (total > 0.0) out /= total;
  return out;
}

PolicyTable project_rows(const PolicyTable& table) {
  PolicyTable out(table.rows(), table.cols());
  for (int s = 0; s < table.rows(); ++s) {
    out.row(s) = project_simplex(table.row(s).transpose()).transpose();
  }
  return out;
}

Matrix project_box(const Matrix& m, double lo, double hi) {
  return m.cwiseMax(lo).cwiseMin(hi);
}

bool in_simplex_rows(const PolicyTable& table, double tol) {
  if (table.size() > 0 && table.minCoeff() < -tol) return false;
  for (int s = 0; s < table.rows(); ++s) {
    if (std::abs(table.row(s).sum() - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace sgrl
