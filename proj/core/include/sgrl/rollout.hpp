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

#ifndef SGRL_ROLLOUT_HPP_
#define SGRL_ROLLOUT_HPP_

#include <cstdint>
#include <ostream>
#include <vector>

#include "sgrl/game.hpp"
#include "sgrl/rng.hpp"

namespace sgrl {

struct Step {
  int s = 0;
  int a = 0;
  int b = 0;
  double r = 0.0;
};

struct Trajectory {
  std::vector<Step> steps;
  bool stopped = false;
  bool truncated = false;

  double episode_return() const;
};

// Smallest cap with (1 - zeta)^cap <= miss_prob.
int episode_cap(double zeta, double miss_prob);
// episode_cap(zeta, 1e-9)
int default_episode_cap(double zeta);

// Row-major copies of the executed policies, ready for sampling.
class EpisodeSampler {
 public:
  EpisodeSampler(const StochasticGame& game, const PolicyTable& pi1,
                 const PolicyTable& pi2);
  EpisodeSampler(const StochasticGame& game, const PolicyPoint& point);

  Trajectory sample(RngStream& rng, int cap) const;

 private:
  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const StochasticGame* game_;
  RowMajor pi1_;
  RowMajor pi2_;
};

Trajectory sample_episode(const StochasticGame& game, const PolicyPoint& point,
                          RngStream& rng, int cap);

struct GradEstimate {
  Matrix grad;
  double episode_return = 0.0;
  bool biased = false;  // set for truncated trajectories
};

// R_T * sum_t (1 - eps) / pi(a_t|s_t) at the visited (s_t, a_t), where pi is
// the executed policy of `side` and R_T the full episode return.
GradEstimate reinforce_estimate(const Trajectory& traj,
                                const PolicyPoint& point, Side side);
// Same, with the executed table of `side` precomputed.
GradEstimate reinforce_estimate(const Trajectory& traj,
                                const PolicyTable& executed, double eps,
                                Side side);

struct GradientStats {
  long long episodes = 0;
  long long truncated = 0;
  Matrix mean_x, se_x, z_x;  // z = (mean - exact) / se, 0 where se == 0
  Matrix mean_y, se_y, z_y;
  Matrix exact_x, exact_y;
  // z-scores after subtracting each row's mean from both the estimate and
  // exact_gradient. The full-return estimator's expectation differs from
  // exact_gradient by a per-row multiple of the ones vector (past rewards
  // times the non-zero mean score), which this comparison removes.
  Matrix tangent_z_x, tangent_z_y;
  // E||g - grad V||^2 and its standard error, per player.
  double second_moment_x = 0.0;
  double second_moment_x_se = 0.0;
  double second_moment_y = 0.0;
  double second_moment_y_se = 0.0;
  double mean_length = 0.0;

  double max_abs_z() const;
  double max_abs_tangent_z() const;
};

// Monte Carlo statistics of the REINFORCE estimator. Episode i draws from
// RngStream(seed, i); partial sums are formed over fixed blocks and combined
// in block order, so the result does not depend on `threads`.
// cap <= 0 selects default_episode_cap(game.zeta()); threads <= 0 defers to
// resolve_threads().
GradientStats gradient_stats(const StochasticGame& game,
                             const PolicyPoint& point, long long n_episodes,
                             std::uint64_t seed, int cap = 0, int threads = 0);

// One episode per line: the (t, s, a, b, r) fields of every step, all
// separated by tabs.
void write_trajectory(std::ostream& os, const Trajectory& traj);

}  // namespace sgrl

#endif  // SGRL_ROLLOUT_HPP_
