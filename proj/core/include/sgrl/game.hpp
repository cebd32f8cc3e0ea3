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

#ifndef SGRL_GAME_HPP_
#define SGRL_GAME_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sgrl/types.hpp"

namespace sgrl {

// Two-player zero-sum stochastic game with per-step stopping.
//
// Stopping is implicit: the mass missing from a transition row,
// 1 - sum_{s'} P(s'|s,a,b), is the probability that play ends after (s,a,b).
// The min-player picks a in [0, A), the max-player picks b in [0, B), and
// R(s,a,b) is the reward the min-player tries to make small.
//
// Construction checks only shapes. Probabilistic invariants are reported by
// validate_game() so that malformed games can still be inspected.
class StochasticGame {
 public:
  // transitions is laid out [s][a][b][s'], rewards [s][a][b].
  StochasticGame(int num_states, int num_actions_min, int num_actions_max,
                 std::vector<double> transitions, std::vector<double> rewards,
                 Vector initial_dist);

  int num_states() const { return num_states_; }
  int num_actions_min() const { return num_actions_min_; }
  int num_actions_max() const { return num_actions_max_; }
  int num_actions(Side side) const {
    return side == Side::kMin ? num_actions_min_ : num_actions_max_;
  }

  double transition(int s, int a, int b, int next) const {
    return transitions_[row_index(s, a, b) * num_states_ + next];
  }
  // Pointer to the num_states() continuation probabilities of (s,a,b).
  const double* transition_row(int s, int a, int b) const {
    return transitions_.data() + row_index(s, a, b) * num_states_;
  }
  double reward(int s, int a, int b) const {
    return rewards_[row_index(s, a, b)];
  }
  // zeta_{s,a,b}
  double stop_prob(int s, int a, int b) const;
  // min over (s,a,b) of stop_prob.
  double zeta() const;

  const Vector& initial_dist() const { return initial_dist_; }
  const std::vector<double>& transitions() const { return transitions_; }
  const std::vector<double>& rewards() const { return rewards_; }

  // Same dynamics, different start distribution.
  StochasticGame with_initial_dist(Vector initial_dist) const;

 private:
  std::size_t row_index(int s, int a, int b) const {
    return (static_cast<std::size_t>(s) * num_actions_min_ + a) *
               num_actions_max_ + b;
  }

  int num_states_;
  int num_actions_min_;
  int num_actions_max_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
  Vector initial_dist_;
};

struct Violation {
  std::string location;
  std::string description;
};

struct ValidationReport {
  bool ok = false;
  double zeta = 0.0;
  std::vector<Violation> violations;
};

// Checks entry ranges, row sums, strictly positive stopping mass, |R| <= 1 and
// that rho is a distribution.
ValidationReport validate_game(const StochasticGame& game);

// von Neumann ratio game V(x,y) = <x,Ry>/<x,Sy> with S entries in (0,1].
struct RatioGame {
  Matrix R;
  Matrix S;

  int rows() const { return static_cast<int>(R.rows()); }
  int cols() const { return static_cast<int>(R.cols()); }
  double value(const Vector& x, const Vector& y) const;
};

// Single-state embedding: stop with probability S(a,b), otherwise stay.
StochasticGame ratio_to_game(const RatioGame& ratio);

// Five-state game whose minimax mismatch coefficient is finite while the
// all-pairs concentrability coefficient is infinite. States are 0-indexed;
// the unreachable-under-best-responses state is index 2. Rewards of the four
// satellite states are -(i-1)/4, i = 2..5, i.e. the min-player gains i-1
// scaled into [-1,1].
StochasticGame prop31_game(double zeta);

// R = [[-1, eps], [-eps, 0]], S = [[s, s], [1, 1]]. Requires
// 0 < s < 1 and 0 < eps < (1-s)/(2s).
RatioGame prop51_ratio(double eps, double s);

// The two ratio games used for the convergence and MVI figures.
RatioGame appd_game1();
RatioGame appd_game2();

// Uniform rewards in [-1,1]; each row's continuation mass is 1 - zeta_row
// with zeta_row uniform in [zeta_min, min(2 zeta_min, 1)] spread over
// uniformly drawn weights; rho drawn uniformly from the simplex.
StochasticGame random_game(int num_states, int num_actions_min,
                           int num_actions_max, double zeta_min,
                           std::uint64_t seed);

// R uniform in [-1,1], S uniform in [zeta_min, 1].
RatioGame random_ratio_game(int rows, int cols, double zeta_min,
                            std::uint64_t seed);

// Direct parameters of both players plus their exploration levels.
struct PolicyPoint {
  PolicyTable x;
  PolicyTable y;
  double eps_x = 0.0;
  double eps_y = 0.0;

  const PolicyTable& params(Side side) const {
    return side == Side::kMin ? x : y;
  }
  double eps(Side side) const { return side == Side::kMin ? eps_x : eps_y; }
};

// (1 - eps) * params + eps / num_actions, row-wise.
PolicyTable greedy_mix(const PolicyTable& params, double eps);

PolicyTable executed_policy(const PolicyPoint& point, Side side);

PolicyTable uniform_policy(int num_states, int num_actions);

// Row s puts all mass on actions[s].
PolicyTable deterministic_policy(const std::vector<int>& actions,
                                 int num_actions);

}  // namespace sgrl

#endif  // SGRL_GAME_HPP_
