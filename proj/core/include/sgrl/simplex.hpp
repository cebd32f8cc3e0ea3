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

#ifndef SGRL_SIMPLEX_HPP_
#define SGRL_SIMPLEX_HPP_

#include "sgrl/types.hpp"

namespace sgrl {

// Euclidean projection onto {p >= 0, sum p = 1}. Sort-based threshold rule.
Vector project_simplex(const Vector& v);

// Row-wise projection of a policy table.
PolicyTable project_rows(const PolicyTable& table);

// Entries clamped to [lo, hi].
Matrix project_box(const Matrix& m, double lo, double hi);

// True if every row is a distribution within tol.
bool in_simplex_rows(const PolicyTable& table, double tol);

}  // namespace sgrl

#endif  // SGRL_SIMPLEX_HPP_
