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

#include "sgrl/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sgrl/rng.hpp"

namespace sgrl {
namespace {

constexpr double kSumTol = 1e-12;

std::string location(int s, int a, int b) {
  std::ostringstream os;
  os << "(s=" << s << ",a=" << a << ",b=" << b << ")";
  return os.str();
}

}  // namespace

StochasticGame::StochasticGame(int num_states, int num_actions_min,
                               int num_actions_max,
                               std::vector<double> transitions,
                               std::vector<double> rewards,
                               Vector initial_dist)
    : num_states_(num_states),
      num_actions_min_(num_actions_min),
      num_actions_max_(num_actions_max),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)),
      initial_dist_(std::move(initial_dist)) {
  if (num_states_ < 1 || num_actions_min_ < 1 || num_actions_max_ < 1) {
    throw StructuralError("game sizes must be positive");
  }
  const std::size_t rows = static_cast<std::size_t>(num_states_) *
                           num_actions_min_ * num_actions_max_;
  if (transitions_.size() != rows * num_states_) {
    throw StructuralError("transitions must have S*A*B*S entries, got " +
                          std::to_string(transitions_.size()));
  }
  if (rewards_.size() != rows) {
    throw StructuralError("rewards must have S*A*B entries, got " +
                          std::to_string(rewards_.size()));
  }
  if (initial_dist_.size() != num_states_) {
    throw StructuralError("initial_dist must have S entries, got " +
                          std::to_string(initial_dist_.size()));
  }
}

double StochasticGame::stop_prob(int s, int a, int b) const {
  const double* row = transition_row(s, a, b);
  double mass = 0.0;
  for (int k = 0; k < num_states_; ++k) mass += row[k];
  return 1.0 - mass;
}

double StochasticGame::zeta() const {
  double z = std::numeric_limits<double>::infinity();
  for (int s = 0; s < num_states_; ++s)
    for (int a = 0; a < num_actions_min_; ++a)
      for (int b = 0; b < num_actions_max_; ++b)
        z = std::min(z, stop_prob(s, a, b));
  return z;
}

StochasticGame StochasticGame::with_initial_dist(Vector initial_dist) const {
  return StochasticGame(num_states_, num_actions_min_, num_actions_max_,
                        transitions_, rewards_, std::move(initial_dist));
}

ValidationReport validate_game(const StochasticGame& game) {
  ValidationReport report;
  const int S = game.num_states();
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < game.num_actions_min(); ++a) {
      for (int b = 0; b < game.num_actions_max(); ++b) {
        const double* row = game.transition_row(s, a, b);
        bool entries_ok = true;
        for (int k = 0; k < S; ++k) {
          if (!(row[k] >= 0.0 && row[k] <= 1.0)) {
            entries_ok = false;
            report.violations.push_back(
                {location(s, a, b),
                 "transition to state " + std::to_string(k) +
                     " outside [0,1]"});
          }
        }
        const double stop = game.stop_prob(s, a, b);
        if (entries_ok && !(stop > 0.0)) {
          report.violations.push_back(
              {location(s, a, b), stop < -kSumTol
                                      ? "transition row sums above 1"
                                      : "zero stopping mass"});
        }
        const double r = game.reward(s, a, b);
        if (!(std::abs(r) <= 1.0)) {
          report.violations.push_back(
              {location(s, a, b), "reward outside [-1,1]"});
        }
      }
    }
  }
  const Vector& rho = game.initial_dist();
  for (int s = 0; s < S; ++s) {
    if (!(rho[s] >= 0.0)) {
      report.violations.push_back(
          {"initial_dist[" + std::to_string(s) + "]", "negative probability"});
    }
  }
  if (!(std::abs(rho.sum() - 1.0) <= kSumTol)) {
    report.violations.push_back({"initial_dist", "does not sum to 1"});
  }
  report.zeta = game.zeta();
  report.ok = report.violations.empty();
  return report;
}

double RatioGame::value(const Vector& x, const Vector& y) const {
  return x.dot(R * y) / x.dot(S * y);
}

StochasticGame ratio_to_game(const RatioGame& ratio) {
  const int A = ratio.rows();
  const int B = ratio.cols();
  if (A < 1 || B < 1 || ratio.S.rows() != A || ratio.S.cols() != B) {
    throw StructuralError("ratio game R and S must share a nonempty shape");
  }
  std::vector<double> transitions(static_cast<std::size_t>(A) * B);
  std::vector<double> rewards(static_cast<std::size_t>(A) * B);
  for (int a = 0; a < A; ++a) {
    for (int b = 0; b < B; ++b) {
      const double stop = ratio.S(a, b);
      if (!(stop > 0.0 && stop <= 1.0)) {
        throw DomainError("invalid stopping probability S(" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
      }
      transitions[a * B + b] = 1.0 - stop;
      rewards[a * B + b] = ratio.R(a, b);
    }
  }
  return StochasticGame(1, A, B, std::move(transitions), std::move(rewards),
                        Vector::Ones(1));
}

StochasticGame prop31_game(double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw DomainError("prop31_game requires zeta in (0,1)");
  }
  constexpr int S = 5;
  constexpr int A = 2;
  constexpr int B = 2;
  std::vector<double> transitions(S * A * B * S, 0.0);
  std::vector<double> rewards(S * A * B, 0.0);
  auto at = [](int s, int a, int b) { return (s * A + a) * B + b; };
  for (int a = 0; a < A; ++a) {
    for (int b = 0; b < B; ++b) {
      // Hub: (a,b) routes to satellite 1 + 2a + b.
      transitions[at(0, a, b) * S + 1 + 2 * a + b] = 1.0 - zeta;
      for (int i = 1; i < S; ++i) {
        transitions[at(i, a, b) * S + 0] = 1.0 - zeta;
        rewards[at(i, a, b)] = -static_cast<double>(i) / 4.0;
      }
    }
  }
  Vector rho(S);
  rho << 0.25, 0.25, 0.0, 0.25, 0.25;
  return StochasticGame(S, A, B, std::move(transitions), std::move(rewards),
                        std::move(rho));
}

RatioGame prop51_ratio(double eps, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError("prop51_ratio requires 0 < s < 1");
  }
  if (!(eps > 0.0 && eps < (1.0 - s) / (2.0 * s))) {
    throw DomainError("prop51_ratio requires 0 < eps < (1-s)/(2s)");
  }
  RatioGame g{Matrix(2, 2), Matrix(2, 2)};
  g.R << -1.0, eps, -eps, 0.0;
  g.S << s, s, 1.0, 1.0;
  return g;
}

RatioGame appd_game1() {
  RatioGame g{Matrix(2, 2), Matrix(2, 2)};
  g.R << -1.0, 0.1, -0.1, 0.0;
  g.S << 0.3, 0.3, 1.0, 1.0;
  return g;
}

RatioGame appd_game2() {
  RatioGame g{Matrix(2, 2), Matrix(2, 2)};
  g.R << -0.6, -0.3, 0.6, -0.3;
  g.S << 0.9, 0.5, 0.8, 0.4;
  return g;
}

StochasticGame random_game(int num_states, int num_actions_min,
                           int num_actions_max, double zeta_min,
                           std::uint64_t seed) {
  if (num_states < 1 || num_actions_min < 1 || num_actions_max < 1) {
    throw DomainError("random_game sizes must be >= 1");
  }
  if (!(zeta_min > 0.0 && zeta_min < 1.0)) {
    throw DomainError("random_game requires zeta_min in (0,1)");
  }
  RngStream rng(seed, 0);
  const int S = num_states;
  const std::size_t rows =
      static_cast<std::size_t>(S) * num_actions_min * num_actions_max;
  std::vector<double> transitions(rows * S);
  std::vector<double> rewards(rows);
  const double zeta_hi = std::min(2.0 * zeta_min, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    rewards[r] = rng.uniform(-1.0, 1.0);
    const double zeta_row = rng.uniform(zeta_min, zeta_hi);
    double total = 0.0;
    for (int k = 0; k < S; ++k) {
      transitions[r * S + k] = rng.uniform();
      total += transitions[r * S + k];
    }
    const double scale = total > 0.0 ? (1.0 - zeta_row) / total : 0.0;
    for (int k = 0; k < S; ++k) transitions[r * S + k] *= scale;
  }
  Vector rho = sample_simplex(rng, S);
  return StochasticGame(S, num_actions_min, num_actions_max,
                        std::move(transitions), std::move(rewards),
                        std::move(rho));
}

RatioGame random_ratio_game(int rows, int cols, double zeta_min,
                            std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw DomainError("ratio game sizes must be >= 1");
  if (!(zeta_min > 0.0 && zeta_min <= 1.0)) {
    throw DomainError("random_ratio_game requires zeta_min in (0,1]");
  }
  RngStream rng(seed, 0);
  RatioGame g{Matrix(rows, cols), Matrix(rows, cols)};
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      g.R(a, b) = rng.uniform(-1.0, 1.0);
      g.S(a, b) = rng.uniform(zeta_min, 1.0);
    }
  }
  return g;
}

PolicyTable greedy_mix(const PolicyTable& params, double eps) {
  const double floor = eps / static_cast<double>(params.cols());
  return ((1.0 - eps) * params.array() + floor).matrix();
}

PolicyTable executed_policy(const PolicyPoint& point, Side side) {
  return greedy_mix(point.params(side), point.eps(side));
}

PolicyTable uniform_policy(int num_states, int num_actions) {
  return PolicyTable::Constant(num_states, num_actions, 1.0 / num_actions);
}

PolicyTable deterministic_policy(const std::vector<int>& actions,
                                 int num_actions) {
  PolicyTable table =
      PolicyTable::Zero(static_cast<int>(actions.size()), num_actions);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    table(static_cast<int>(s), actions[s]) = 1.0;
  }
  return table;
}

}  // namespace sgrl
