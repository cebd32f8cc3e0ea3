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

#include "sgrl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgrl/exact_eval.hpp"
#include "sgrl/parallel.hpp"

namespace sgrl {

Vector mvi_field(const RatioGame& ratio, const JointPoint& z) {
  const Vector Ry = ratio.R * z.y;
  const Vector Sy = ratio.S * z.y;
  const Vector Rx = ratio.R.transpose() * z.x;
  const Vector Sx = ratio.S.transpose() * z.x;
  const double num = z.x.dot(Ry);
  const double den = z.x.dot(Sy);
  const double den2 = den * den;
  Vector F(z.x.size() + z.y.size());
  F.head(z.x.size()) = (den * Ry - num * Sy) / den2;
  F.tail(z.y.size()) = -(den * Rx - num * Sx) / den2;
  return F;
}

double mvi_inner(const RatioGame& ratio, const JointPoint& z,
                 const JointPoint& z_ref) {
  const Vector F = mvi_field(ratio, z);
  const int n = static_cast<int>(z.x.size());
  return F.head(n).dot(z.x - z_ref.x) +
         F.tail(z.y.size()).dot(z.y - z_ref.y);
}

MviSample mvi_sample(const RatioGame& ratio, const JointPoint& z,
                     const JointPoint& z_ref) {
  MviSample out{z, mvi_inner(ratio, z, z_ref), 0};
  if (out.inner > kSignTolerance) out.sign = 1;
  if (out.inner < -kSignTolerance) out.sign = -1;
  return out;
}

Eigen::MatrixXi mvi_sign_grid(const RatioGame& ratio, const JointPoint& z_ref,
                              int resolution, int threads) {
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
  if (ratio.rows() != 2 || ratio.cols() != 2) {
    throw StructuralError("sign grids are defined for 2x2 ratio games");
  }
  Eigen::MatrixXi grid(resolution, resolution);
  const double h = 1.0 / (resolution - 1);
  parallel_for(resolution, resolve_threads(threads), [&](int i) {
    const double w = i * h;
    for (int j = 0; j < resolution; ++j) {
      const double u = j * h;
      JointPoint z{Vector(2), Vector(2)};
      z.x << u, 1.0 - u;
      z.y << w, 1.0 - w;
      grid(i, j) = mvi_sample(ratio, z, z_ref).sign;
    }
  });
  return grid;
}

void write_sign_grid_csv(std::ostream& os, const Eigen::MatrixXi& grid) {
  for (int i = 0; i < grid.rows(); ++i) {
    for (int j = 0; j < grid.cols(); ++j) {
      if (j > 0) os << ',';
      os << grid(i, j);
    }
    os << '\n';
  }
}

double ratio_phi(const RatioGame& ratio, const Vector& x) {
  return (ratio.R.transpose() * x)
      .cwiseQuotient(ratio.S.transpose() * x)
      .maxCoeff();
}

double ratio_psi(const RatioGame& ratio, const Vector& y) {
  return (ratio.R * y).cwiseQuotient(ratio.S * y).minCoeff();
}

double game_phi(const StochasticGame& game, const PolicyTable& pi1,
                double tol) {
  return best_response(game, pi1, Side::kMax, tol).value;
}

double game_psi(const StochasticGame& game, const PolicyTable& pi2,
                double tol) {
  return best_response(game, pi2, Side::kMin, tol).value;
}

MoreauDiag moreau_diag(const SaddleOracle& oracle, const Matrix& x, double ell,
                       double tol, long long max_iters, double lambda) {
  if (!(ell > 0.0) || !(tol > 0.0) || max_iters < 1) {
    throw DomainError("moreau_diag needs ell > 0, tol > 0, max_iters >= 1");
  }
  MoreauDiag diag;
  diag.experimental = lambda > 0.0 && lambda != 1.0 / (2.0 * ell);
  diag.lambda = lambda > 0.0 ? lambda : 1.0 / (2.0 * ell);
  if (!(diag.lambda < 1.0 / ell)) {
    throw DomainError("moreau_diag needs lambda < 1/ell");
  }
  const double mu = 1.0 / diag.lambda - ell;
  const Domain dom = oracle.domain_x();
  const auto objective = [&](const Matrix& p, double phi) {
    return phi + (p - x).squaredNorm() / (2.0 * diag.lambda);
  };

  Matrix cur = dom.project(x);
  for (long long k = 1; k <= max_iters; ++k) {
    const ResponseValue br = oracle.max_over_y(cur);
    const Matrix g = oracle.gradient(cur, br.response).x +
                     (cur - x) / diag.lambda;
    const Matrix next = dom.project(cur - g / (mu * static_cast<double>(k)));
    const double moved = (next - cur).norm();
    cur = next;
    diag.iterations = k;
    if (moved < tol) {
      diag.converged = true;
      break;
    }
  }
  diag.prox_point = cur;
  diag.phi_value = oracle.max_over_y(x).value;
  diag.env_value = objective(cur, oracle.max_over_y(cur).value);
  diag.grad_norm = (x - cur).norm() / diag.lambda;
  return diag;
}

double ball_constrained_ascent(const Domain& domain, const Matrix& x,
                               const Matrix& c) {
  // The maximizer is proj(x + tau c) for the tau at which the ball becomes
  // active; ||proj(x + tau c) - x|| is nondecreasing in tau.
  auto at = [&](double tau) { return domain.project(x + tau * c); };
  if (c.norm() == 0.0) return 0.0;
  double hi = 1.0 / c.norm();
  Matrix p = at(hi);
  int doublings = 0;
  while ((p - x).norm() < 1.0 && doublings < 80) {
    const Matrix q = at(2.0 * hi);
    // Projection has saturated on the face maximizing c.
    if ((q - p).norm() <= 1e-15) break;
    hi *= 2.0;
    p = q;
    ++doublings;
  }
  if ((p - x).norm() <= 1.0) return c.cwiseProduct(p - x).sum();
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((at(mid) - x).norm() > 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return c.cwiseProduct(at(lo) - x).sum();
}

ProbeResult gradient_dominance_probe(const SaddleOracle& oracle,
                                     const std::vector<ProbePoint>& points,
                                     double mu, double eps_gd) {
  ProbeResult out;
  out.worst = std::numeric_limits<double>::infinity();
  const Domain dx = oracle.domain_x();
  const Domain dy = oracle.domain_y();
  for (const ProbePoint& pt : points) {
    const double f = oracle.value(pt.x, pt.y);
    const GradientPair g = oracle.gradient(pt.x, pt.y);
    const double rx = ball_constrained_ascent(dx, pt.x, -g.x) -
                      mu * (f - oracle.min_over_x(pt.y).value) + eps_gd;
    const double ry = ball_constrained_ascent(dy, pt.y, g.y) -
                      mu * (oracle.max_over_y(pt.x).value - f) + eps_gd;
    out.res_x.push_back(rx);
    out.res_y.push_back(ry);
    out.worst = std::min({out.worst, rx, ry});
  }
  return out;
}

}  // namespace sgrl
