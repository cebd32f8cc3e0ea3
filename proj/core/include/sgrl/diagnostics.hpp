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

#ifndef SGRL_DIAGNOSTICS_HPP_
#define SGRL_DIAGNOSTICS_HPP_

#include <ostream>
#include <vector>

#include "sgrl/game.hpp"
#include "sgrl/oracle.hpp"

namespace sgrl {

// Joint strategy profile of a ratio game.
struct JointPoint {
  Vector x;
  Vector y;
};

// F(z) = (grad_x f, -grad_y f), stacked x block first.
Vector mvi_field(const RatioGame& ratio, const JointPoint& z);

// <F(z), z - z_ref>
double mvi_inner(const RatioGame& ratio, const JointPoint& z,
                 const JointPoint& z_ref);

constexpr double kSignTolerance = 1e-12;

struct MviSample {
  JointPoint z;
  double inner = 0.0;
  int sign = 0;  // 0 when |inner| <= kSignTolerance
};

MviSample mvi_sample(const RatioGame& ratio, const JointPoint& z,
                     const JointPoint& z_ref);

// Signs over z = ((u, 1-u), (w, 1-w)) with u, w on a uniform grid of
// `resolution` points in [0, 1]. Entry (i, j) holds w = i/(res-1) and
// u = j/(res-1): rows follow y, columns follow x. 2x2 games only.
Eigen::MatrixXi mvi_sign_grid(const RatioGame& ratio, const JointPoint& z_ref,
                              int resolution, int threads = 0);

// res x res comma-separated matrix, one grid row per line.
void write_sign_grid_csv(std::ostream& os, const Eigen::MatrixXi& grid);

// Phi(x) = max_y f(x, y), Psi(y) = min_x f(x, y) by vertex enumeration.
double ratio_phi(const RatioGame& ratio, const Vector& x);
double ratio_psi(const RatioGame& ratio, const Vector& y);

// Same for a stochastic game, via best_response on the given policy tables.
double game_phi(const StochasticGame& game, const PolicyTable& pi1,
                double tol);
double game_psi(const StochasticGame& game, const PolicyTable& pi2,
                double tol);

struct MoreauDiag {
  double lambda = 0.0;
  Matrix prox_point;
  double phi_value = 0.0;   // Phi(x)
  double env_value = 0.0;   // Phi_lambda(x)
  double grad_norm = 0.0;   // ||x - prox|| / lambda
  long long iterations = 0;
  bool converged = false;
  bool experimental = false;  // lambda other than 1/(2 ell)
};

// prox = argmin_{x'} Phi(x') + ||x' - x||^2 / (2 lambda) over the x domain of
// `oracle`, with Phi(x') = max_y f(x', y). Projected supergradient descent
// using grad_x f(x', y*(x')); step 1/(mu k) where mu = 1/lambda - ell is the
// strong convexity modulus of the prox objective. Stops when the step
// displacement falls below tol. lambda <= 0 selects 1/(2 ell).
MoreauDiag moreau_diag(const SaddleOracle& oracle, const Matrix& x, double ell,
                       double tol, long long max_iters = 10000,
                       double lambda = 0.0);

struct ProbePoint {
  Matrix x;
  Matrix y;
};

struct ProbeResult {
  double worst = 0.0;           // min over points and sides
  std::vector<double> res_x;    // per point
  std::vector<double> res_y;
};

// max_{xbar in X, ||xbar - x|| <= 1} <c, xbar - x> for a linear objective c.
double ball_constrained_ascent(const Domain& domain, const Matrix& x,
                               const Matrix& c);

// Per point and side:
//   max_{xbar} <x - xbar, grad_x f> - mu (f - min_x f) + eps_gd
//   max_{ybar} <ybar - y, grad_y f> - mu (max_y f - f) + eps_gd
// with xbar, ybar limited to the unit ball around the point.
ProbeResult gradient_dominance_probe(const SaddleOracle& oracle,
                                     const std::vector<ProbePoint>& points,
                                     double mu, double eps_gd);

}  // namespace sgrl

#endif  // SGRL_DIAGNOSTICS_HPP_
