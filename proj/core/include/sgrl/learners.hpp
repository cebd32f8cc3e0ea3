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

#ifndef SGRL_LEARNERS_HPP_
#define SGRL_LEARNERS_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sgrl/oracle.hpp"

namespace sgrl {

enum class GradientMode { kExact, kSampled };

GradientMode parse_gradient_mode(const std::string& text);
const char* to_string(GradientMode mode);

class UnsupportedMode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LearnerConfig {
  double eta_x = 1e-3;
  double eta_y = 1e-1;
  // Exploration used when a game oracle is built from this config.
  double eps_x = 0.05;
  double eps_y = 0.05;
  long long iters = 1000;
  std::uint64_t seed = 0;
  GradientMode mode = GradientMode::kExact;
  long long log_every = 100;

  // Throws DomainError on nonpositive step sizes, iters < 1, log_every < 1.
  void check() const;
};

struct RunRecord {
  long long iter = 0;
  double primal_gap = 0.0;
  double dual_gap = 0.0;
  double pd_gap = 0.0;
  double grad_norm_x = 0.0;  // Frobenius norm of the exact gradient blocks
  double grad_norm_y = 0.0;
  // Mean of primal_gap over this and all earlier records.
  double avg_primal_gap = 0.0;
};

struct RunHistory {
  std::vector<RunRecord> records;
  Matrix x;
  Matrix y;
  // Mean of the iterates x_0, ..., x_{N-1} (and likewise y).
  Matrix x_avg;
  Matrix y_avg;

  // Header iter,primal_gap,dual_gap,pd_gap,grad_norm_x,grad_norm_y,
  // avg_primal_gap; numbers in shortest round-trip form.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;
};

// x' = P(x - eta_x g_x), y' = P(y + eta_y g_y) with g exact or one oracle
// draw from rng.
std::pair<Matrix, Matrix> sgda_step(const SaddleOracle& oracle,
                                    const Matrix& x, const Matrix& y,
                                    double eta_x, double eta_y,
                                    GradientMode mode, RngStream& rng);

// Iteration i of a sampled run draws from RngStream(seed, i). Gaps are
// logged at iteration 0, every log_every iterations and at iters; when the
// oracle reports no gaps the gap columns are NaN.
RunHistory run_two_timescale(const SaddleOracle& oracle, const Matrix& x0,
                             const Matrix& y0, const LearnerConfig& config);

struct Theorem1Constants {
  double eta_x = 1.0;
  double eta_y = 1.0;
  double eps_x = 1.0;
  double eps_y = 1.0;
  double iters = 1.0;
};

struct Theorem1Rates {
  double eta_x = 0.0;
  double eta_y = 0.0;
  double eps_x = 0.0;
  double eps_y = 0.0;
  double iters = 0.0;  // may be far beyond any integer type
};

// Step sizes, exploration levels and iteration count of the two-timescale
// policy-gradient guarantee, with every hidden constant set from `c`.
Theorem1Rates theorem1_rates(double epsilon, int num_states, int num_actions_min,
                             int num_actions_max, double zeta, double mismatch,
                             const Theorem1Constants& c = {});

// Extragradient on exact gradients; min descends, max ascends.
std::pair<Matrix, Matrix> eg_step(const SaddleOracle& oracle, const Matrix& x,
                                  const Matrix& y, double eta,
                                  GradientMode mode = GradientMode::kExact);

RunHistory run_extragradient(const SaddleOracle& oracle, const Matrix& x0,
                             const Matrix& y0, double eta, long long iters,
                             long long log_every,
                             GradientMode mode = GradientMode::kExact);

}  // namespace sgrl

#endif  // SGRL_LEARNERS_HPP_
