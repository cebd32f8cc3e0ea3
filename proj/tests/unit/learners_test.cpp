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


#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sgrl/exact_eval.hpp"
#include "sgrl/game.hpp"
#include "sgrl/learners.hpp"
#include "sgrl/oracle.hpp"
#include "sgrl/rng.hpp"
#include "sgrl/rollout.hpp"
#include "sgrl/simplex.hpp"

namespace sgrl {
namespace {

// Projection onto the simplex by trying every support set: on support T the
// KKT point is v_i - tau with tau = (sum_T v - 1)/|T|; keep the feasible
// candidate closest to v.
Vector projection_by_supports(const Vector& v) {
  const int n = static_cast<int>(v.size());
  Vector best;
  double best_dist = INFINITY;
  for (int mask = 1; mask < (1 << n); ++mask) {
    double sum = 0.0;
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        sum += v(i);
        ++k;
      }
    }
    const double tau = (sum - 1.0) / k;
    Vector p = Vector::Zero(n);
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        p(i) = v(i) - tau;
        if (p(i) < 0.0) feasible = false;
      }
    }
    if (!feasible) continue;
    const double dist = (p - v).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = p;
    }
  }
  return best;
}

Vector random_vector(RngStream& rng, int n, double scale) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(-scale, scale);
  return v;
}

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) m(0, i++) = e;
  return m;
}

// Quotient-rule gradients of <x, R y> / <x, S y>.
GradientPair ratio_gradient(const RatioGame& g, const Vector& x,
                            const Vector& y) {
  const double num = x.dot(g.R * y);
  const double den = x.dot(g.S * y);
  GradientPair out;
  out.x = ((den * g.R * y - num * g.S * y) / (den * den)).transpose();
  out.y = ((den * g.R.transpose() * x - num * g.S.transpose() * x) /
           (den * den))
              .transpose();
  return out;
}

TEST(ProjectSimplex, SimpleCases) {
  const Vector on = (Vector(3) << 0.2, 0.3, 0.5).finished();
  EXPECT_TRUE(project_simplex(on).isApprox(on, 1e-15));
  const Vector p = project_simplex((Vector(2) << 2.0, 0.0).finished());
  EXPECT_EQ(p, (Vector(2) << 1.0, 0.0).finished());
}

TEST(ProjectSimplex, MatchesSupportEnumeration) {
  RngStream rng(1, 0);
  for (int t = 0; t < 1000; ++t) {
    const Vector v = random_vector(rng, 5, 2.0);
    const Vector p = project_simplex(v);
    EXPECT_LT((p - projection_by_supports(v)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
  }
}

TEST(ProjectSimplex, IdempotentAndNonexpansive) {
  RngStream rng(2, 0);
  for (int t = 0; t < 1000; ++t) {
    const Vector u = random_vector(rng, 4, 3.0);
    const Vector v = random_vector(rng, 4, 3.0);
    const Vector pu = project_simplex(u);
    EXPECT_LT((project_simplex(pu) - pu).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((pu - project_simplex(v)).norm(), (u - v).norm() + 1e-12);
  }
}

TEST(ProjectSimplex, RowsAndBox) {
  const Matrix m = (Matrix(2, 2) << 2.0, 0.0, 0.3, 0.3).finished();
  const Matrix p = project_rows(m);
  EXPECT_TRUE(in_simplex_rows(p, 1e-12));
  EXPECT_TRUE(p.row(1).isApprox(row({0.5, 0.5}), 1e-15));
  EXPECT_EQ(project_box(row({-1.0, 0.5, 2.0}), 0.0, 1.0), row({0.0, 0.5, 1.0}));
}

TEST(GradientMode, Parse) {
  EXPECT_EQ(parse_gradient_mode("exact"), GradientMode::kExact);
  EXPECT_EQ(parse_gradient_mode("sampled"), GradientMode::kSampled);
  EXPECT_STREQ(to_string(GradientMode::kSampled), "sampled");
  EXPECT_THROW(parse_gradient_mode("stochastic"), std::invalid_argument);
}

TEST(LearnerConfig, Check) {
  LearnerConfig c;
  EXPECT_NO_THROW(c.check());
  c.eta_x = -1.0;
  EXPECT_THROW(c.check(), DomainError);
  c = LearnerConfig{};
  c.iters = 0;
  EXPECT_THROW(c.check(), DomainError);
  c = LearnerConfig{};
  c.log_every = 0;
  EXPECT_THROW(c.check(), DomainError);
}

TEST(SgdaStep, ZeroGradientIsFixedPoint) {
  const Matrix x0 = row({0.3, 0.6});
  const Matrix y0 = row({0.4, 0.2});
  const QuadraticBoxOracle oracle(1.0, x0, Matrix::Zero(2, 2), 1.0, y0, 0.0,
                                  1.0);
  RngStream rng(3, 0);
  const auto [x, y] =
      sgda_step(oracle, x0, y0, 0.5, 0.5, GradientMode::kExact, rng);
  EXPECT_EQ(x, x0);
  EXPECT_EQ(y, y0);
}

TEST(SgdaStep, InteriorStepOnBox) {
  const Matrix M = (Matrix(2, 2) << 1.0, -0.5, 0.25, 2.0).finished();
  const QuadraticBoxOracle oracle(2.0, row({0.5, 0.5}), M, 1.0,
                                  row({0.5, 0.5}), -10.0, 10.0);
  const Matrix x = row({0.1, 0.2});
  const Matrix y = row({0.3, -0.4});
  const GradientPair g = oracle.gradient(x, y);
  // grad_x = a (x - x0) + M y, grad_y = M^T x - b (y - y0).
  const Vector gx = 2.0 * (x - row({0.5, 0.5})).transpose() + M * y.transpose();
  EXPECT_TRUE(g.x.transpose().isApprox(gx, 1e-15));
  RngStream rng(4, 0);
  const auto [xn, yn] =
      sgda_step(oracle, x, y, 0.01, 0.02, GradientMode::kExact, rng);
  EXPECT_TRUE(xn.isApprox(x - 0.01 * g.x, 1e-15));
  EXPECT_TRUE(yn.isApprox(y + 0.02 * g.y, 1e-15));
}

TEST(SgdaStep, InteriorStepOnRatioGame) {
  const RatioGame game = appd_game2();
  const RatioOracle oracle(game);
  const Vector x = (Vector(2) << 0.4, 0.6).finished();
  const Vector y = (Vector(2) << 0.7, 0.3).finished();
  const GradientPair g = ratio_gradient(game, x, y);
  RngStream rng(5, 0);
  const auto [xn, yn] = sgda_step(oracle, x.transpose(), y.transpose(), 1e-3,
                                  1e-2, GradientMode::kExact, rng);
  // Interior projection removes the component along the ones vector.
  const Matrix gx = g.x.array() - g.x.mean();
  const Matrix gy = g.y.array() - g.y.mean();
  EXPECT_LT((xn - (x.transpose() - 1e-3 * gx)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((yn - (y.transpose() + 1e-2 * gy)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SgdaStep, SharedTrajectoryForBothPlayers) {
  const StochasticGame game = random_game(2, 2, 2, 0.3, 6);
  const GameOracle oracle(game, 0.1, 0.1);
  const Matrix x = uniform_policy(2, 2);
  const Matrix y = uniform_policy(2, 2);
  RngStream a(7, 3), b(7, 3);
  const GradientPair g = oracle.sample_gradient(x, y, a);
  PolicyPoint p{x, y, 0.1, 0.1};
  const Trajectory traj = sample_episode(game, p, b, oracle.episode_cap());
  EXPECT_EQ(g.x, reinforce_estimate(traj, p, Side::kMin).grad);
  EXPECT_EQ(g.y, reinforce_estimate(traj, p, Side::kMax).grad);
}

TEST(SgdaStep, SampledMeanDisplacementMatchesExact) {
  const StochasticGame game = random_game(2, 2, 2, 0.3, 8);
  const GameOracle oracle(game, 0.1, 0.1);
  const Matrix x = (Matrix(2, 2) << 0.4, 0.6, 0.55, 0.45).finished();
  const Matrix y = (Matrix(2, 2) << 0.3, 0.7, 0.5, 0.5).finished();
  const double eta = 1e-4;
  RngStream unused(0, 0);
  const auto [ex, ey] =
      sgda_step(oracle, x, y, eta, eta, GradientMode::kExact, unused);
  const int n = 100000;
  Matrix sx = Matrix::Zero(2, 2), sx2 = Matrix::Zero(2, 2);
  Matrix sy = Matrix::Zero(2, 2), sy2 = Matrix::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    RngStream rng(9, i);
    const auto [nx, ny] =
        sgda_step(oracle, x, y, eta, eta, GradientMode::kSampled, rng);
    const Matrix dx = nx - x;
    const Matrix dy = ny - y;
    sx += dx;
    sx2 += dx.cwiseProduct(dx);
    sy += dy;
    sy2 += dy.cwiseProduct(dy);
  }
  auto check = [n](const Matrix& s, const Matrix& s2, const Matrix& exact) {
    for (int i = 0; i < s.rows(); ++i) {
      for (int j = 0; j < s.cols(); ++j) {
        const double mean = s(i, j) / n;
        const double se = std::sqrt((s2(i, j) / n - mean * mean) / n);
        EXPECT_LE(std::abs(mean - exact(i, j)), 3 * se + 1e-15);
      }
    }
  };
  check(sx, sx2, ex - x);
  check(sy, sy2, ey - y);
}

TEST(TwoTimescale, FrozenMinPlayer) {
  const RatioOracle oracle(appd_game2());
  LearnerConfig c;
  c.eta_x = 0.0;
  c.eta_y = 0.05;
  c.iters = 2000;
  c.log_every = 100;
  const Matrix x0 = row({0.5, 0.5});
  const Matrix y0 = row({0.0, 1.0});
  const RunHistory h = run_two_timescale(oracle, x0, y0, c);
  EXPECT_EQ(h.x, x0);
  const ResponseValue br = oracle.max_over_y(x0);
  EXPECT_LT(br.value - oracle.value(x0, h.y),
            br.value - oracle.value(x0, y0));
}

TEST(TwoTimescale, RecordsAndAverages) {
  const GameOracle oracle(random_game(2, 2, 2, 0.3, 10), 0.05, 0.05);
  LearnerConfig c;
  c.iters = 1000;
  c.log_every = 100;
  c.mode = GradientMode::kSampled;
  c.seed = 5;
  const RunHistory h =
      run_two_timescale(oracle, uniform_policy(2, 2), uniform_policy(2, 2), c);
  ASSERT_EQ(h.records.size(), 11u);
  double sum = 0.0;
  for (std::size_t i = 0; i < h.records.size(); ++i) {
    const RunRecord& r = h.records[i];
    EXPECT_EQ(r.iter, static_cast<long long>(i) * 100);
    EXPECT_GE(r.primal_gap, -1e-9);
    EXPECT_NEAR(r.pd_gap, r.primal_gap + r.dual_gap, 1e-12);
    sum += r.primal_gap;
    EXPECT_NEAR(r.avg_primal_gap, sum / static_cast<double>(i + 1), 1e-12);
  }
  EXPECT_TRUE(in_simplex_rows(h.x, 1e-10));
  EXPECT_TRUE(in_simplex_rows(h.y, 1e-10));
  EXPECT_TRUE(in_simplex_rows(h.x_avg, 1e-10));
}

TEST(TwoTimescale, Reproducible) {
  const GameOracle oracle(random_game(2, 2, 2, 0.3, 11), 0.1, 0.1);
  LearnerConfig c;
  c.iters = 500;
  c.log_every = 50;
  c.mode = GradientMode::kSampled;
  c.seed = 42;
  const Matrix u = uniform_policy(2, 2);
  EXPECT_EQ(run_two_timescale(oracle, u, u, c).to_csv(),
            run_two_timescale(oracle, u, u, c).to_csv());
  const std::string first = run_two_timescale(oracle, u, u, c).to_csv();
  c.seed = 43;
  EXPECT_NE(run_two_timescale(oracle, u, u, c).to_csv(), first);
}

TEST(TwoTimescale, TunedRatesShrinkAveragePrimalGap) {
  const GameOracle oracle(random_game(2, 2, 2, 0.3, 12), 0.05, 0.05);
  LearnerConfig c;
  c.iters = 100000;
  c.log_every = 100;
  const Matrix u = uniform_policy(2, 2);
  const RunHistory h = run_two_timescale(oracle, u, u, c);
  EXPECT_LT(h.records.back().avg_primal_gap, h.records[1].avg_primal_gap);
}

TEST(RunHistory, CsvHeader) {
  RunHistory h;
  h.records.push_back({0, 0.5, 0.25, 0.75, 1.0, 2.0, 0.5});
  const std::string csv = h.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "iter,primal_gap,dual_gap,pd_gap,grad_norm_x,grad_norm_y,"
            "avg_primal_gap");
  EXPECT_NE(csv.find("0,0.5,0.25,0.75,1,2,0.5"), std::string::npos);
}

TEST(RateSchedule, UnitInputs) {
  const Theorem1Rates r = theorem1_rates(1.0, 1, 1, 1, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(r.eta_x, 1.0);
  EXPECT_DOUBLE_EQ(r.eta_y, 1.0);
  EXPECT_DOUBLE_EQ(r.eps_x, 1.0);
  EXPECT_DOUBLE_EQ(r.eps_y, 1.0);
  EXPECT_DOUBLE_EQ(r.iters, 1.0);
}

TEST(RateSchedule, DoublingMismatchScalesIterations) {
  const Theorem1Rates a = theorem1_rates(0.5, 2, 2, 3, 0.4, 3.0);
  const Theorem1Rates b = theorem1_rates(0.5, 2, 2, 3, 0.4, 6.0);
  EXPECT_NEAR(b.iters / a.iters, std::pow(2.0, 17.5), 1e-6 * std::pow(2.0, 17.5));
}

TEST(RateSchedule, Orderings) {
  RngStream rng(13, 0);
  for (int t = 0; t < 1000; ++t) {
    const double eps = 0.01 + 0.98 * rng.uniform();
    const double zeta = 0.05 + 0.95 * rng.uniform();
    const double cg = 1.0 + 20.0 * rng.uniform();
    const int S = 1 + static_cast<int>(rng.uniform() * 5);
    const int A = 1 + static_cast<int>(rng.uniform() * 5);
    const int B = 1 + static_cast<int>(rng.uniform() * 5);
    const Theorem1Rates r = theorem1_rates(eps, S, A, B, zeta, cg);
    EXPECT_LT(r.eta_x, r.eta_y);
    EXPECT_LE(r.eps_y, r.eps_x);
  }
  EXPECT_THROW(theorem1_rates(0.0, 1, 1, 1, 1.0, 1.0), DomainError);
  EXPECT_THROW(theorem1_rates(0.5, 1, 1, 1, 0.0, 1.0), DomainError);
}

TEST(Extragradient, ZeroGradientIsFixedPoint) {
  const Matrix x0 = row({0.3, 0.6});
  const Matrix y0 = row({0.4, 0.2});
  const QuadraticBoxOracle oracle(1.0, x0, Matrix::Zero(2, 2), 1.0, y0, 0.0,
                                  1.0);
  const auto [x, y] = eg_step(oracle, x0, y0, 0.1);
  EXPECT_EQ(x, x0);
  EXPECT_EQ(y, y0);
}

TEST(Extragradient, OneStepByHand) {
  const RatioGame game = appd_game1();
  const RatioOracle oracle(game);
  const Vector x = (Vector(2) << 1.0, 0.0).finished();
  const Vector y = x;
  const double eta = 0.01;
  const GradientPair g0 = ratio_gradient(game, x, y);
  const Vector xh = project_simplex(x - eta * g0.x.transpose());
  const Vector yh = project_simplex(y + eta * g0.y.transpose());
  const GradientPair g1 = ratio_gradient(game, xh, yh);
  const Vector x1 = project_simplex(x - eta * g1.x.transpose());
  const Vector y1 = project_simplex(y + eta * g1.y.transpose());
  const auto [xn, yn] = eg_step(oracle, x.transpose(), y.transpose(), eta);
  EXPECT_LT((xn.transpose() - x1).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((yn.transpose() - y1).cwiseAbs().maxCoeff(), 1e-12);
  // At the vertex <x,Sy> = 0.3, <x,Ry> = -1, Ry = (-1, -0.1), Sy = (0.3, 1).
  EXPECT_NEAR(g0.x(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(g0.x(0, 1), (0.3 * -0.1 + 1.0) / 0.09, 1e-12);
}

TEST(Extragradient, SampledModeUnsupported) {
  const RatioOracle oracle(appd_game1());
  const Matrix z = row({0.5, 0.5});
  EXPECT_THROW(eg_step(oracle, z, z, 0.01, GradientMode::kSampled),
               UnsupportedMode);
  EXPECT_THROW(run_extragradient(oracle, z, z, 0.01, 10, 1,
                                 GradientMode::kSampled),
               UnsupportedMode);
}

TEST(Extragradient, EquilibriumStaysPut) {
  const RatioOracle oracle(appd_game1());
  const Matrix ne = row({0.0, 1.0});
  const RunHistory h = run_extragradient(oracle, ne, ne, 0.01, 1000, 10);
  for (const RunRecord& r : h.records) EXPECT_LE(r.pd_gap, 1e-12);
}

TEST(Extragradient, ConvergesOnFirstRatioGame) {
  const RatioOracle oracle(appd_game1());
  const Matrix z0 = row({1.0, 0.0});
  const RunHistory h = run_extragradient(oracle, z0, z0, 0.01, 100000, 1000);
  EXPECT_LT(h.records.back().pd_gap, 1e-4);
  EXPECT_TRUE(in_simplex_rows(h.x, 1e-10));
  EXPECT_TRUE(in_simplex_rows(h.y, 1e-10));
}

}  // namespace
}  // namespace sgrl
