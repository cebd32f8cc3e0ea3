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

#ifndef SGRL_TYPES_HPP_
#define SGRL_TYPES_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sgrl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A per-state distribution table: one row per state, one column per action.
using PolicyTable = Eigen::MatrixXd;

// The min-player chooses a in A and minimizes; the max-player chooses b in B.
enum class Side { kMin, kMax };

inline Side opponent(Side side) {
  return side == Side::kMin ? Side::kMax : Side::kMin;
}

inline const char* to_string(Side side) {
  return side == Side::kMin ? "min" : "max";
}

// Tensor shapes or sizes that do not line up. Distinct from invariant
// violations, which validate_game reports as data.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A parameter outside the documented range of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Something that cannot happen for valid inputs (e.g. a singular Bellman
// system). Seeing this means an upstream invariant was broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sgrl

#endif  // SGRL_TYPES_HPP_
