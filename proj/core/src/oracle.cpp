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

#include "sgrl/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sgrl/rollout.hpp"
#include "sgrl/simplex.hpp"

namespace sgrl {
namespace {

Vector as_vector(const Matrix& row_table) {
  return Eigen::Map<const Vector>(row_table.data(), row_table.size());
}

Matrix as_row(const Vector& v) { return v.transpose(); }

Matrix unit_row(int n, int k) {
  Matrix out = Matrix::Zero(1, n);
  out(0, k) = 1.0;
  return out;
}

// Lowest index attaining the extreme value.
int arg_extreme(const Vector& v, bool maximize) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (maximize ? v[i] > v[best] : v[i] < v[best]) best = i;
  }
  return best;
}

}  // namespace

Matrix Domain::project(const Matrix& m) const {
  if (m.rows() != rows || m.cols() != cols) {
    throw StructuralError("point shape does not match the domain");
  }
  return kind == Kind::kSimplexRows ? project_rows(m) : project_box(m, lo, hi);
}

bool Domain::contains(const Matrix& m, double tol) const {
  if (m.rows() != rows || m.cols() != cols) return false;
  if (kind == Kind::kSimplexRows) return in_simplex_rows(m, tol);
  return m.minCoeff() >= lo - tol && m.maxCoeff() <= hi + tol;
}

GradientPair SaddleOracle::sample_gradient(const Matrix& x, const Matrix& y,
                                           RngStream& rng) const {
  (void)rng;
  return gradient(x, y);
}

StochasticGame explore_game(const StochasticGame& game, double eps,
                            Side side) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  std::vector<double> P(game.transitions().size());
  std::vector<double> R(game.rewards().size());
  const int n = side == Side::kMin ? A : B;
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b) {
        const std::size_t idx = (static_cast<std::size_t>(s) * A + a) * B + b;
        double r = (1.0 - eps) * game.reward(s, a, b);
        for (int k = 0; k < S; ++k) {
          P[idx * S + k] = (1.0 - eps) * game.transition(s, a, b, k);
        }
        for (int c = 0; c < n; ++c) {
          const int aa = side == Side::kMin ? c : a;
          const int bb = side == Side::kMin ? b : c;
          r += eps / n * game.reward(s, aa, bb);
          for (int k = 0; k < S; ++k) {
            P[idx * S + k] += eps / n * game.transition(s, aa, bb, k);
          }
        }
        R[idx] = r;
      }
    }
  }
  return StochasticGame(S, A, B, std::move(P), std::move(R),
                        game.initial_dist());
}

// ---------------------------------------------------------------------------

GameOracle::GameOracle(StochasticGame game, double eps_x, double eps_y,
                       double solver_tol)
    : game_(std::move(game)),
      eps_x_(eps_x),
      eps_y_(eps_y),
      tol_(solver_tol),
      v_star_(0.0),
      cap_(1),
      explore_min_(explore_game(game_, eps_x, Side::kMin)),
      explore_max_(explore_game(game_, eps_y, Side::kMax)) {
  if (eps_x < 0.0 || eps_x > 1.0 || eps_y < 0.0 || eps_y > 1.0) {
    throw DomainError("exploration levels must lie in [0, 1]");
  }
  v_star_ = shapley_value(game_, tol_).v_rho;
  cap_ = default_episode_cap(game_.zeta());
}

PolicyPoint GameOracle::point(const Matrix& x, const Matrix& y) const {
  return PolicyPoint{x, y, eps_x_, eps_y_};
}

Domain GameOracle::domain_x() const {
  return {Domain::Kind::kSimplexRows, game_.num_states(),
          game_.num_actions_min()};
}

Domain GameOracle::domain_y() const {
  return {Domain::Kind::kSimplexRows, game_.num_states(),
          game_.num_actions_max()};
}

double GameOracle::value(const Matrix& x, const Matrix& y) const {
  return policy_value(game_, greedy_mix(x, eps_x_), greedy_mix(y, eps_y_));
}

GradientPair GameOracle::gradient(const Matrix& x, const Matrix& y) const {
  return exact_gradient(game_, point(x, y));
}

GradientPair GameOracle::sample_gradient(const Matrix& x, const Matrix& y,
                                         RngStream& rng) const {
  const PolicyTable pi1 = greedy_mix(x, eps_x_);
  const PolicyTable pi2 = greedy_mix(y, eps_y_);
  const EpisodeSampler sampler(game_, pi1, pi2);
  const Trajectory traj = sampler.sample(rng, cap_);
  GradientPair g;
  g.x = reinforce_estimate(traj, pi1, eps_x_, Side::kMin).grad;
  if (independent_) {
    const Trajectory second = sampler.sample(rng, cap_);
    g.y = reinforce_estimate(second, pi2, eps_y_, Side::kMax).grad;
  } else {
    g.y = reinforce_estimate(traj, pi2, eps_y_, Side::kMax).grad;
  }
  return g;
}

double GameOracle::variance_bound_x() const {
  return regularity_constants(game_, eps_x_, eps_y_, 1.0).var_x;
}

double GameOracle::variance_bound_y() const {
  return regularity_constants(game_, eps_x_, eps_y_, 1.0).var_y;
}

ResponseValue GameOracle::max_over_y(const Matrix& x) const {
  const BestResponse br = best_response(explore_max_, greedy_mix(x, eps_x_),
                                        Side::kMax, tol_);
  return {br.value, br.policy};
}

ResponseValue GameOracle::min_over_x(const Matrix& y) const {
  const BestResponse br = best_response(explore_min_, greedy_mix(y, eps_y_),
                                        Side::kMin, tol_);
  return {br.value, br.policy};
}

std::optional<NashGaps> GameOracle::gaps(const Matrix& x,
                                         const Matrix& y) const {
  return nash_gaps(game_, point(x, y), v_star_, tol_);
}

double GameOracle::smoothness() const {
  return regularity_constants(game_, eps_x_, eps_y_, 1.0).ell;
}

// ---------------------------------------------------------------------------

RatioOracle::RatioOracle(RatioGame ratio, double solver_tol)
    : ratio_(std::move(ratio)), v_star_(0.0), zeta_(ratio_.S.minCoeff()) {
  v_star_ = shapley_value(ratio_to_game(ratio_), solver_tol).v_rho;
}

Domain RatioOracle::domain_x() const {
  return {Domain::Kind::kSimplexRows, 1, ratio_.rows()};
}

Domain RatioOracle::domain_y() const {
  return {Domain::Kind::kSimplexRows, 1, ratio_.cols()};
}

double RatioOracle::value(const Matrix& x, const Matrix& y) const {
  return ratio_.value(as_vector(x), as_vector(y));
}

GradientPair RatioOracle::gradient(const Matrix& x, const Matrix& y) const {
  const Vector xv = as_vector(x);
  const Vector yv = as_vector(y);
  const Vector Ry = ratio_.R * yv;
  const Vector Sy = ratio_.S * yv;
  const Vector Rx = ratio_.R.transpose() * xv;
  const Vector Sx = ratio_.S.transpose() * xv;
  const double num = xv.dot(Ry);
  const double den = xv.dot(Sy);
  const double den2 = den * den;
  GradientPair g;
  g.x = as_row((den * Ry - num * Sy) / den2);
  g.y = as_row((den * Rx - num * Sx) / den2);
  return g;
}

ResponseValue RatioOracle::max_over_y(const Matrix& x) const {
  const Vector xv = as_vector(x);
  const Vector vals = (ratio_.R.transpose() * xv).cwiseQuotient(
      ratio_.S.transpose() * xv);
  const int b = arg_extreme(vals, true);
  return {vals[b], unit_row(ratio_.cols(), b)};
}

ResponseValue RatioOracle::min_over_x(const Matrix& y) const {
  const Vector yv = as_vector(y);
  const Vector vals = (ratio_.R * yv).cwiseQuotient(ratio_.S * yv);
  const int a = arg_extreme(vals, false);
  return {vals[a], unit_row(ratio_.rows(), a)};
}

std::optional<NashGaps> RatioOracle::gaps(const Matrix& x,
                                          const Matrix& y) const {
  const double phi = max_over_y(x).value;
  const double psi = min_over_x(y).value;
  return NashGaps{phi - v_star_, v_star_ - psi, phi - psi};
}

double RatioOracle::smoothness() const {
  const double n = std::max(ratio_.rows(), ratio_.cols());
  return 4.0 * n / (zeta_ * zeta_ * zeta_);
}

// ---------------------------------------------------------------------------

QuadraticBoxOracle::QuadraticBoxOracle(double a, Matrix x0, Matrix M, double b,
                                       Matrix y0, double lo, double hi,
                                       double sigma)
    : a_(a),
      x0_(std::move(x0)),
      M_(std::move(M)),
      b_(b),
      y0_(std::move(y0)),
      lo_(lo),
      hi_(hi),
      sigma_(sigma) {
  if (M_.rows() != x0_.size() || M_.cols() != y0_.size()) {
    throw StructuralError("coupling matrix shape does not match x0, y0");
  }
  if (a_ < 0.0 || b_ < 0.0 || sigma_ < 0.0 || !(lo_ < hi_)) {
    throw DomainError("quadratic oracle needs a, b, sigma >= 0 and lo < hi");
  }
}

Domain QuadraticBoxOracle::domain_x() const {
  return {Domain::Kind::kBox, static_cast<int>(x0_.rows()),
          static_cast<int>(x0_.cols()), lo_, hi_};
}

Domain QuadraticBoxOracle::domain_y() const {
  return {Domain::Kind::kBox, static_cast<int>(y0_.rows()),
          static_cast<int>(y0_.cols()), lo_, hi_};
}

double QuadraticBoxOracle::value(const Matrix& x, const Matrix& y) const {
  const Vector xv = as_vector(x);
  const Vector yv = as_vector(y);
  return 0.5 * a_ * (xv - as_vector(x0_)).squaredNorm() + xv.dot(M_ * yv) -
         0.5 * b_ * (yv - as_vector(y0_)).squaredNorm();
}

GradientPair QuadraticBoxOracle::gradient(const Matrix& x,
                                          const Matrix& y) const {
  const Vector xv = as_vector(x);
  const Vector yv = as_vector(y);
  const Vector gx = a_ * (xv - as_vector(x0_)) + M_ * yv;
  const Vector gy = M_.transpose() * xv - b_ * (yv - as_vector(y0_));
  GradientPair g;
  g.x = Eigen::Map<const Matrix>(gx.data(), x.rows(), x.cols());
  g.y = Eigen::Map<const Matrix>(gy.data(), y.rows(), y.cols());
  return g;
}

GradientPair QuadraticBoxOracle::sample_gradient(const Matrix& x,
                                                 const Matrix& y,
                                                 RngStream& rng) const {
  GradientPair g = gradient(x, y);
  // Uniform on [-sqrt(3), sqrt(3)] has unit variance.
  const double scale = sigma_ * std::sqrt(3.0);
  for (Eigen::Index i = 0; i < g.x.size(); ++i) {
    g.x.data()[i] += scale * (2.0 * rng.uniform() - 1.0);
  }
  for (Eigen::Index i = 0; i < g.y.size(); ++i) {
    g.y.data()[i] += scale * (2.0 * rng.uniform() - 1.0);
  }
  return g;
}

double QuadraticBoxOracle::variance_bound_x() const {
  return sigma_ * sigma_ * static_cast<double>(x0_.size());
}

double QuadraticBoxOracle::variance_bound_y() const {
  return sigma_ * sigma_ * static_cast<double>(y0_.size());
}

ResponseValue QuadraticBoxOracle::max_over_y(const Matrix& x) const {
  const Vector c = M_.transpose() * as_vector(x);
  Vector y(c.size());
  for (int i = 0; i < c.size(); ++i) {
    if (b_ > 0.0) {
      y[i] = std::clamp(y0_.data()[i] + c[i] / b_, lo_, hi_);
    } else {
      y[i] = c[i] > 0.0 ? hi_ : (c[i] < 0.0 ? lo_ : std::clamp(y0_.data()[i], lo_, hi_));
    }
  }
  Matrix ym = Eigen::Map<const Matrix>(y.data(), y0_.rows(), y0_.cols());
  return {value(x, ym), ym};
}

ResponseValue QuadraticBoxOracle::min_over_x(const Matrix& y) const {
  const Vector c = M_ * as_vector(y);
  Vector x(c.size());
  for (int i = 0; i < c.size(); ++i) {
    if (a_ > 0.0) {
      x[i] = std::clamp(x0_.data()[i] - c[i] / a_, lo_, hi_);
    } else {
      x[i] = c[i] < 0.0 ? hi_ : (c[i] > 0.0 ? lo_ : std::clamp(x0_.data()[i], lo_, hi_));
    }
  }
  Matrix xm = Eigen::Map<const Matrix>(x.data(), x0_.rows(), x0_.cols());
  return {value(xm, y), xm};
}

double QuadraticBoxOracle::smoothness() const {
  const double coupling =
      M_.size() > 0 ? Eigen::JacobiSVD<Matrix>(M_).singularValues()[0] : 0.0;
  const double ell = std::max(a_, b_) + coupling;
  return ell > 0.0 ? ell : 1.0;
}

}  // namespace sgrl
