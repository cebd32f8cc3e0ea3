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

#include "sgrl/rollout.hpp"

#include <algorithm>
#include <cmath>

#include "sgrl/exact_eval.hpp"
#include "sgrl/numeric.hpp"
#include "sgrl/parallel.hpp"

namespace sgrl {
namespace {

constexpr long long kBlock = 4096;

// Falls back to the last positive entry when rounding leaves u above the
// cumulative sum of a row that should sum to one.
int draw_action(RngStream& rng, const double* row, int n) {
  const int k = rng.categorical(row, n);
  if (k < n) return k;
  for (int i = n - 1; i >= 0; --i) {
    if (row[i] > 0.0) return i;
  }
  return n - 1;
}

struct BlockSums {
  std::vector<CompensatedSum> gx, gx2, gy, gy2;
  std::vector<CompensatedSum> tx, tx2, ty, ty2;  // row-centered copies
  CompensatedSum ex, ex2, ey, ey2, length;
  long long truncated = 0;
};

}  // namespace

double Trajectory::episode_return() const {
  CompensatedSum total;
  for (const Step& st : steps) total.add(st.r);
  return total.value();
}

int episode_cap(double zeta, double miss_prob) {
  if (!(zeta > 0.0)) throw DomainError("episode_cap requires zeta > 0");
  if (zeta >= 1.0) return 1;
  const double n = std::ceil(std::log(miss_prob) / std::log1p(-zeta));
  return static_cast<int>(std::clamp(n, 1.0, 1e9));
}

int default_episode_cap(double zeta) { return episode_cap(zeta, 1e-9); }

EpisodeSampler::EpisodeSampler(const StochasticGame& game,
                               const PolicyTable& pi1, const PolicyTable& pi2)
    : game_(&game), pi1_(pi1), pi2_(pi2) {
  if (pi1.rows() != game.num_states() || pi1.cols() != game.num_actions_min() ||
      pi2.rows() != game.num_states() || pi2.cols() != game.num_actions_max()) {
    throw StructuralError("policy table shape does not match the game");
  }
}

EpisodeSampler::EpisodeSampler(const StochasticGame& game,
                               const PolicyPoint& point)
    : EpisodeSampler(game, executed_policy(point, Side::kMin),
                     executed_policy(point, Side::kMax)) {}

Trajectory EpisodeSampler::sample(RngStream& rng, int cap) const {
  if (cap < 1) throw DomainError("episode cap must be >= 1");
  const StochasticGame& g = *game_;
  const int S = g.num_states();
  const int A = g.num_actions_min();
  const int B = g.num_actions_max();
  Trajectory traj;
  int s = draw_action(rng, g.initial_dist().data(), S);
  for (int t = 0; t < cap; ++t) {
    const int a = draw_action(rng, pi1_.row(s).data(), A);
    const int b = draw_action(rng, pi2_.row(s).data(), B);
    traj.steps.push_back({s, a, b, g.reward(s, a, b)});
    const int next = rng.categorical(g.transition_row(s, a, b), S);
    if (next == S) {
      traj.stopped = true;
      return traj;
    }
    s = next;
  }
  traj.truncated = true;
  return traj;
}

Trajectory sample_episode(const StochasticGame& game, const PolicyPoint& point,
                          RngStream& rng, int cap) {
  return EpisodeSampler(game, point).sample(rng, cap);
}

GradEstimate reinforce_estimate(const Trajectory& traj,
                                const PolicyTable& executed, double eps,
                                Side side) {
  GradEstimate est;
  est.grad = Matrix::Zero(executed.rows(), executed.cols());
  est.episode_return = traj.episode_return();
  est.biased = traj.truncated;
  if (est.episode_return == 0.0) return est;
  // Accumulate the score counts first so R_T multiplies once.
  for (const Step& st : traj.steps) {
    const int c = side == Side::kMin ? st.a : st.b;
    est.grad(st.s, c) += (1.0 - eps) / executed(st.s, c);
  }
  est.grad *= est.episode_return;
  return est;
}

GradEstimate reinforce_estimate(const Trajectory& traj,
                                const PolicyPoint& point, Side side) {
  return reinforce_estimate(traj, executed_policy(point, side),
                            point.eps(side), side);
}

double GradientStats::max_abs_z() const {
  return std::max(z_x.cwiseAbs().maxCoeff(), z_y.cwiseAbs().maxCoeff());
}

double GradientStats::max_abs_tangent_z() const {
  return std::max(tangent_z_x.cwiseAbs().maxCoeff(),
                  tangent_z_y.cwiseAbs().maxCoeff());
}

GradientStats gradient_stats(const StochasticGame& game,
                             const PolicyPoint& point, long long n_episodes,
                             std::uint64_t seed, int cap, int threads) {
  if (n_episodes < 2) throw DomainError("gradient_stats needs >= 2 episodes");
  if (cap <= 0) cap = default_episode_cap(game.zeta());
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  const PolicyTable pi1 = executed_policy(point, Side::kMin);
  const PolicyTable pi2 = executed_policy(point, Side::kMax);
  const EpisodeSampler sampler(game, pi1, pi2);
  const GradientPair exact = exact_gradient(game, point);

  const long long num_blocks = (n_episodes + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(num_blocks));
  parallel_for(static_cast<int>(num_blocks), resolve_threads(threads),
               [&](int blk) {
    BlockSums& out = blocks[blk];
    out.gx.resize(S * A);
    out.gx2.resize(S * A);
    out.gy.resize(S * B);
    out.gy2.resize(S * B);
    out.tx.resize(S * A);
    out.tx2.resize(S * A);
    out.ty.resize(S * B);
    out.ty2.resize(S * B);
    const long long begin = blk * kBlock;
    const long long end = std::min(n_episodes, begin + kBlock);
    Matrix gx(S, A), gy(S, B);
    for (long long i = begin; i < end; ++i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      const Trajectory traj = sampler.sample(rng, cap);
      if (traj.truncated) ++out.truncated;
      out.length.add(static_cast<double>(traj.steps.size()));
      const double ret = traj.episode_return();
      gx.setZero();
      gy.setZero();
      for (const Step& st : traj.steps) {
        gx(st.s, st.a) += (1.0 - point.eps_x) / pi1(st.s, st.a);
        gy(st.s, st.b) += (1.0 - point.eps_y) / pi2(st.s, st.b);
      }
      gx *= ret;
      gy *= ret;
      for (int s = 0; s < S; ++s) {
        const double mx = gx.row(s).mean();
        const double my = gy.row(s).mean();
        for (int a = 0; a < A; ++a) {
          const double t = gx(s, a) - mx;
          out.gx[s * A + a].add(gx(s, a));
          out.gx2[s * A + a].add(gx(s, a) * gx(s, a));
          out.tx[s * A + a].add(t);
          out.tx2[s * A + a].add(t * t);
        }
        for (int b = 0; b < B; ++b) {
          const double t = gy(s, b) - my;
          out.gy[s * B + b].add(gy(s, b));
          out.gy2[s * B + b].add(gy(s, b) * gy(s, b));
          out.ty[s * B + b].add(t);
          out.ty2[s * B + b].add(t * t);
        }
      }
      const double dx = (gx - exact.x).squaredNorm();
      const double dy = (gy - exact.y).squaredNorm();
      out.ex.add(dx);
      out.ex2.add(dx * dx);
      out.ey.add(dy);
      out.ey2.add(dy * dy);
    }
  });

  BlockSums total;
  total.gx.resize(S * A);
  total.gx2.resize(S * A);
  total.gy.resize(S * B);
  total.gy2.resize(S * B);
  total.tx.resize(S * A);
  total.tx2.resize(S * A);
  total.ty.resize(S * B);
  total.ty2.resize(S * B);
  for (const BlockSums& blk : blocks) {
    for (int k = 0; k < S * A; ++k) {
      total.gx[k].add(blk.gx[k]);
      total.gx2[k].add(blk.gx2[k]);
      total.tx[k].add(blk.tx[k]);
      total.tx2[k].add(blk.tx2[k]);
    }
    for (int k = 0; k < S * B; ++k) {
      total.gy[k].add(blk.gy[k]);
      total.gy2[k].add(blk.gy2[k]);
      total.ty[k].add(blk.ty[k]);
      total.ty2[k].add(blk.ty2[k]);
    }
    total.ex.add(blk.ex);
    total.ex2.add(blk.ex2);
    total.ey.add(blk.ey);
    total.ey2.add(blk.ey2);
    total.length.add(blk.length);
    total.truncated += blk.truncated;
  }

  const double n = static_cast<double>(n_episodes);
  auto mean_se = [n](double sum, double sum2, double* mean, double* se) {
    *mean = sum / n;
    const double var = std::max(0.0, (sum2 / n - (*mean) * (*mean))) *
                       n / (n - 1.0);
    *se = std::sqrt(var / n);
  };

  GradientStats st;
  st.episodes = n_episodes;
  st.truncated = total.truncated;
  st.mean_length = total.length.value() / n;
  st.exact_x = exact.x;
  st.exact_y = exact.y;
  auto fill = [&](const std::vector<CompensatedSum>& g,
                  const std::vector<CompensatedSum>& g2, const Matrix& ex,
                  Matrix* mean, Matrix* se, Matrix* z) {
    const int rows = static_cast<int>(ex.rows());
    const int cols = static_cast<int>(ex.cols());
    mean->resize(rows, cols);
    se->resize(rows, cols);
    z->resize(rows, cols);
    for (int s = 0; s < rows; ++s) {
      for (int c = 0; c < cols; ++c) {
        double m = 0.0, e = 0.0;
        mean_se(g[s * cols + c].value(), g2[s * cols + c].value(), &m, &e);
        (*mean)(s, c) = m;
        (*se)(s, c) = e;
        (*z)(s, c) = e > 0.0 ? (m - ex(s, c)) / e : 0.0;
      }
    }
  };
  fill(total.gx, total.gx2, exact.x, &st.mean_x, &st.se_x, &st.z_x);
  fill(total.gy, total.gy2, exact.y, &st.mean_y, &st.se_y, &st.z_y);
  auto center = [](Matrix m) {
    for (int s = 0; s < m.rows(); ++s) m.row(s).array() -= m.row(s).mean();
    return m;
  };
  Matrix unused_mean, unused_se;
  fill(total.tx, total.tx2, center(exact.x), &unused_mean, &unused_se,
       &st.tangent_z_x);
  fill(total.ty, total.ty2, center(exact.y), &unused_mean, &unused_se,
       &st.tangent_z_y);
  mean_se(total.ex.value(), total.ex2.value(), &st.second_moment_x,
          &st.second_moment_x_se);
  mean_se(total.ey.value(), total.ey2.value(), &st.second_moment_y,
          &st.second_moment_y_se);
  return st;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const Step& st = traj.steps[t];
    if (t > 0) os << '\t';
    os << t << '\t' << st.s << '\t' << st.a << '\t' << st.b << '\t'
       << format_double(st.r);
  }
  os << '\n';
}

}  // namespace sgrl
