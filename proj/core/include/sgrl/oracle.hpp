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

#ifndef SGRL_ORACLE_HPP_
#define SGRL_ORACLE_HPP_

#include <optional>

#include "sgrl/exact_eval.hpp"
#include "sgrl/game.hpp"
#include "sgrl/rng.hpp"

namespace sgrl {

struct Domain {
  enum class Kind { kSimplexRows, kBox };
  Kind kind = Kind::kSimplexRows;
  int rows = 0;
  int cols = 0;
  double lo = 0.0;  // box only
  double hi = 1.0;  // box only

  Matrix project(const Matrix& m) const;
  bool contains(const Matrix& m, double tol) const;
};

struct ResponseValue {
  double value = 0.0;
  Matrix response;  // attaining point of the responder
};

// First-order oracle for min_x max_y f(x, y). Implementations are immutable
// after construction and safe to share between threads.
class SaddleOracle {
 public:
  virtual ~SaddleOracle() = default;

  virtual Domain domain_x() const = 0;
  virtual Domain domain_y() const = 0;

  virtual double value(const Matrix& x, const Matrix& y) const = 0;
  // Plain partial gradients; y ascends.
  virtual GradientPair gradient(const Matrix& x, const Matrix& y) const = 0;

  virtual bool is_stochastic() const { return false; }
  // One unbiased draw. The default returns the exact gradient.
  virtual GradientPair sample_gradient(const Matrix& x, const Matrix& y,
                                       RngStream& rng) const;
  // Declared bounds on E||g - grad f||^2 per block; 0 for exact oracles.
  virtual double variance_bound_x() const { return 0.0; }
  virtual double variance_bound_y() const { return 0.0; }

  // Phi(x) = max_y f(x, y) and Psi(y) = min_x f(x, y) with maximizers.
  virtual ResponseValue max_over_y(const Matrix& x) const = 0;
  virtual ResponseValue min_over_x(const Matrix& y) const = 0;

  // Gaps relative to the minimax value when the oracle knows it.
  virtual std::optional<NashGaps> gaps(const Matrix& x,
                                       const Matrix& y) const {
    (void)x;
    (void)y;
    return std::nullopt;
  }

  // Smoothness constant of f used for Moreau diagnostics.
  virtual double smoothness() const = 0;
};

// f = V_rho of the executed (epsilon-greedy) policies. Sampled gradients are
// REINFORCE estimates; both players share one episode unless
// independent_episodes is set.
class GameOracle : public SaddleOracle {
 public:
  GameOracle(StochasticGame game, double eps_x, double eps_y,
             double solver_tol = 1e-10);

  const StochasticGame& game() const { return game_; }
  double eps_x() const { return eps_x_; }
  double eps_y() const { return eps_y_; }
  double v_star() const { return v_star_; }
  int episode_cap() const { return cap_; }
  void set_independent_episodes(bool on) { independent_ = on; }
  bool independent_episodes() const { return independent_; }

  PolicyPoint point(const Matrix& x, const Matrix& y) const;

  Domain domain_x() const override;
  Domain domain_y() const override;
  double value(const Matrix& x, const Matrix& y) const override;
  GradientPair gradient(const Matrix& x, const Matrix& y) const override;
  bool is_stochastic() const override { return true; }
  GradientPair sample_gradient(const Matrix& x, const Matrix& y,
                               RngStream& rng) const override;
  double variance_bound_x() const override;
  double variance_bound_y() const override;
  // Maximizes over the y parameters, i.e. over executed policies that carry
  // eps_y exploration.
  ResponseValue max_over_y(const Matrix& x) const override;
  ResponseValue min_over_x(const Matrix& y) const override;
  // Unrestricted best responses against the executed policies, measured
  // from the Shapley value.
  std::optional<NashGaps> gaps(const Matrix& x, const Matrix& y) const override;
  double smoothness() const override;

 private:
  StochasticGame game_;
  double eps_x_;
  double eps_y_;
  double tol_;
  double v_star_;
  int cap_;
  bool independent_ = false;
  StochasticGame explore_min_;  // x-side actions pre-mixed with eps_x
  StochasticGame explore_max_;  // y-side actions pre-mixed with eps_y
};

// f(x, y) = <x, R y> / <x, S y> over a pair of simplices (stored as 1-row
// tables). Gradients follow the quotient rule.
class RatioOracle : public SaddleOracle {
 public:
  explicit RatioOracle(RatioGame ratio, double solver_tol = 1e-13);

  const RatioGame& ratio() const { return ratio_; }
  double v_star() const { return v_star_; }

  Domain domain_x() const override;
  Domain domain_y() const override;
  double value(const Matrix& x, const Matrix& y) const override;
  GradientPair gradient(const Matrix& x, const Matrix& y) const override;
  // Vertex enumeration: the ratio is quasi-linear in each player's variable.
  ResponseValue max_over_y(const Matrix& x) const override;
  ResponseValue min_over_x(const Matrix& y) const override;
  std::optional<NashGaps> gaps(const Matrix& x, const Matrix& y) const override;
  double smoothness() const override;

 private:
  RatioGame ratio_;
  double v_star_;
  double zeta_;
};

// f(x, y) = a/2 ||x - x0||^2 + <x, M y> - b/2 ||y - y0||^2 over boxes.
// Sampled gradients add independent uniform noise of standard deviation
// sigma to every coordinate.
class QuadraticBoxOracle : public SaddleOracle {
 public:
  QuadraticBoxOracle(double a, Matrix x0, Matrix M, double b, Matrix y0,
                     double lo, double hi, double sigma = 0.0);

  Domain domain_x() const override;
  Domain domain_y() const override;
  double value(const Matrix& x, const Matrix& y) const override;
  GradientPair gradient(const Matrix& x, const Matrix& y) const override;
  bool is_stochastic() const override { return sigma_ > 0.0; }
  GradientPair sample_gradient(const Matrix& x, const Matrix& y,
                               RngStream& rng) const override;
  double variance_bound_x() const override;
  double variance_bound_y() const override;
  ResponseValue max_over_y(const Matrix& x) const override;
  ResponseValue min_over_x(const Matrix& y) const override;
  double smoothness() const override;

 private:
  double a_;
  Matrix x0_;
  Matrix M_;  // x0.size() x y0.size(), acting on flattened blocks
  double b_;
  Matrix y0_;
  double lo_;
  double hi_;
  double sigma_;
};

// Game whose `side` actions are replaced by their eps-mixtures with the
// uniform policy; deterministic policies of the result are executed
// eps-greedy policies of the original.
StochasticGame explore_game(const StochasticGame& game, double eps, Side side);

}  // namespace sgrl

#endif  // SGRL_ORACLE_HPP_
