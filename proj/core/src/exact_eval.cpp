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

#include "sgrl/exact_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgrl/rng.hpp"

namespace sgrl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Markov chain induced by a policy pair.
struct InducedChain {
  Matrix P;
  Vector r;
};

InducedChain induce(const StochasticGame& game, const PolicyTable& pi1,
                    const PolicyTable& pi2) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  if (pi1.rows() != S || pi1.cols() != A || pi2.rows() != S ||
      pi2.cols() != B) {
    throw StructuralError("policy table shape does not match the game");
  }
  InducedChain chain{Matrix::Zero(S, S), Vector::Zero(S)};
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b) {
        const double w = pi1(s, a) * pi2(s, b);
        if (w == 0.0) continue;
        chain.r[s] += w * game.reward(s, a, b);
        const double* row = game.transition_row(s, a, b);
        for (int k = 0; k < S; ++k) chain.P(s, k) += w * row[k];
      }
    }
  }
  return chain;
}

Eigen::PartialPivLU<Matrix> factor(const Matrix& P) {
  const Matrix I_minus_P = Matrix::Identity(P.rows(), P.cols()) - P;
  Eigen::PartialPivLU<Matrix> lu(I_minus_P);
  if (!(std::abs(lu.determinant()) > 0.0)) {
    throw InternalError("singular Bellman system; stopping mass must be > 0");
  }
  return lu;
}

// Responder-side induced MDP against a fixed opponent table.
struct InducedMdp {
  int num_actions = 0;
  std::vector<Vector> r;  // r[c](s)
  std::vector<Matrix> P;  // P[c](s, s')
};

InducedMdp induce_mdp(const StochasticGame& game, const PolicyTable& fixed,
                      Side responder) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  const int n_resp = responder == Side::kMin ? A : B;
  const int n_fixed = responder == Side::kMin ? B : A;
  if (fixed.rows() != S || fixed.cols() != n_fixed) {
    throw StructuralError("fixed policy table shape does not match the game");
  }
  InducedMdp mdp;
  mdp.num_actions = n_resp;
  mdp.r.assign(n_resp, Vector::Zero(S));
  mdp.P.assign(n_resp, Matrix::Zero(S, S));
  for (int s = 0; s < S; ++s) {
    for (int c = 0; c < n_resp; ++c) {
      for (int o = 0; o < n_fixed; ++o) {
        const double w = fixed(s, o);
        if (w == 0.0) continue;
        const int a = responder == Side::kMin ? c : o;
        const int b = responder == Side::kMin ? o : c;
        mdp.r[c][s] += w * game.reward(s, a, b);
        const double* row = game.transition_row(s, a, b);
        for (int k = 0; k < S; ++k) mdp.P[c](s, k) += w * row[k];
      }
    }
  }
  return mdp;
}

// Greedy action per state; ties go to the lowest index.
std::vector<int> greedy(const InducedMdp& mdp, const Vector& v, bool maximize,
                        Vector* backup) {
  const int S = static_cast<int>(v.size());
  std::vector<int> act(S, 0);
  Vector best(S);
  for (int s = 0; s < S; ++s) {
    double bv = 0.0;
    for (int c = 0; c < mdp.num_actions; ++c) {
      const double q = mdp.r[c][s] + mdp.P[c].row(s).dot(v);
      const double slack = 1e-13 * (1.0 + std::abs(q));
      if (c == 0 || (maximize ? q > bv + slack : q < bv - slack)) {
        bv = q;
        act[s] = c;
      }
    }
    best[s] = bv;
  }
  if (backup != nullptr) *backup = best;
  return act;
}

Vector evaluate_deterministic(const InducedMdp& mdp,
                              const std::vector<int>& act) {
  const int S = static_cast<int>(act.size());
  Matrix P(S, S);
  Vector r(S);
  for (int s = 0; s < S; ++s) {
    P.row(s) = mdp.P[act[s]].row(s);
    r[s] = mdp.r[act[s]][s];
  }
  return factor(P).solve(r);
}

std::vector<int> decode(long long index, int num_states, int num_actions) {
  std::vector<int> act(num_states);
  for (int s = num_states - 1; s >= 0; --s) {
    act[s] = static_cast<int>(index % num_actions);
    index /= num_actions;
  }
  return act;
}

double best_response_slack(double tol, double zeta) {
  return tol * (1.0 + 1.0 / zeta);
}

}  // namespace

long long deterministic_policy_count(int num_states, int num_actions) {
  long long count = 1;
  for (int s = 0; s < num_states; ++s) {
    if (count > (1LL << 62) / num_actions) return -1;
    count *= num_actions;
  }
  return count;
}

void for_each_deterministic(
    int num_states, int num_actions,
    const std::function<void(const std::vector<int>&)>& fn) {
  const long long count = deterministic_policy_count(num_states, num_actions);
  if (count < 0) throw BudgetExceeded("deterministic policy count overflows");
  for (long long i = 0; i < count; ++i) fn(decode(i, num_states, num_actions));
}

EvalBundle evaluate_policies(const StochasticGame& game, const PolicyTable& pi1,
                             const PolicyTable& pi2) {
  const InducedChain chain = induce(game, pi1, pi2);
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  EvalBundle out;
  out.num_actions_min = A;
  out.num_actions_max = B;
  out.v = factor(chain.P).solve(chain.r);
  out.q.resize(static_cast<std::size_t>(S) * A * B);
  out.adv.resize(out.q.size());
  std::size_t idx = 0;
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b, ++idx) {
        const double* row = game.transition_row(s, a, b);
        double cont = 0.0;
        for (int k = 0; k < S; ++k) cont += row[k] * out.v[k];
        out.q[idx] = game.reward(s, a, b) + cont;
        out.adv[idx] = out.q[idx] - out.v[s];
      }
    }
  }
  out.v_rho = game.initial_dist().dot(out.v);
  return out;
}

EvalBundle value_bundle(const StochasticGame& game, const PolicyPoint& point) {
  return evaluate_policies(game, executed_policy(point, Side::kMin),
                           executed_policy(point, Side::kMax));
}

double policy_value(const StochasticGame& game, const PolicyTable& pi1,
                    const PolicyTable& pi2) {
  const InducedChain chain = induce(game, pi1, pi2);
  return game.initial_dist().dot(factor(chain.P).solve(chain.r));
}

VisitationResult visitation(const StochasticGame& game, const PolicyTable& pi1,
                            const PolicyTable& pi2, const Vector& start) {
  const InducedChain chain = induce(game, pi1, pi2);
  const Matrix I_minus_Pt =
      Matrix::Identity(chain.P.rows(), chain.P.cols()) - chain.P.transpose();
  Eigen::PartialPivLU<Matrix> lu(I_minus_Pt);
  if (!(std::abs(lu.determinant()) > 0.0)) {
    throw InternalError("singular occupancy system");
  }
  VisitationResult out;
  out.dtilde = lu.solve(start);
  out.total = out.dtilde.sum();
  out.d = out.dtilde / out.total;
  return out;
}

VisitationResult visitation(const StochasticGame& game, const PolicyTable& pi1,
                            const PolicyTable& pi2) {
  return visitation(game, pi1, pi2, game.initial_dist());
}

VisitationResult visitation(const StochasticGame& game,
                            const PolicyPoint& point) {
  return visitation(game, executed_policy(point, Side::kMin),
                    executed_policy(point, Side::kMax));
}

GradientPair exact_gradient(const StochasticGame& game,
                            const PolicyPoint& point) {
  const PolicyTable pi1 = executed_policy(point, Side::kMin);
  const PolicyTable pi2 = executed_policy(point, Side::kMax);
  const EvalBundle eval = evaluate_policies(game, pi1, pi2);
  const VisitationResult visit = visitation(game, pi1, pi2);
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  GradientPair g{Matrix::Zero(S, A), Matrix::Zero(S, B)};
  for (int s = 0; s < S; ++s) {
    const double wx = (1.0 - point.eps_x) * visit.dtilde[s];
    const double wy = (1.0 - point.eps_y) * visit.dtilde[s];
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b) {
        const double q = eval.q_at(s, a, b);
        g.x(s, a) += wx * pi2(s, b) * q;
        g.y(s, b) += wy * pi1(s, a) * q;
      }
    }
  }
  return g;
}

double performance_difference_residual(const StochasticGame& game,
                                       const PolicyPair& p,
                                       const PolicyPair& p_alt) {
  const EvalBundle base = evaluate_policies(game, p.min, p.max);
  const EvalBundle alt = evaluate_policies(game, p_alt.min, p_alt.max);
  const VisitationResult visit = visitation(game, p.min, p.max);
  double rhs = 0.0;
  for (int s = 0; s < game.num_states(); ++s) {
    double expected_adv = 0.0;
    for (int a = 0; a < game.num_actions_min(); ++a) {
      for (int b = 0; b < game.num_actions_max(); ++b) {
        expected_adv += p.min(s, a) * p.max(s, b) * alt.adv_at(s, a, b);
      }
    }
    rhs += visit.dtilde[s] * expected_adv;
  }
  return std::abs(base.v_rho - alt.v_rho - rhs);
}

BestResponse best_response(const StochasticGame& game, const PolicyTable& fixed,
                           Side responder, double tol) {
  if (!(tol > 0.0)) throw DomainError("best_response requires tol > 0");
  const InducedMdp mdp = induce_mdp(game, fixed, responder);
  const bool maximize = responder == Side::kMax;
  const double zeta = game.zeta();
  const int S = game.num_states();

  Vector v = Vector::Zero(S);
  Vector next;
  // Contraction factor <= 1 - zeta; the cap only guards degenerate input.
  const int max_iters =
      10 + static_cast<int>(std::ceil(std::log(tol * zeta / (1.0 + 1.0 / zeta)) /
                                      std::log1p(-std::min(zeta, 1.0 - 1e-16))));
  for (int it = 0; it < std::max(max_iters, 10); ++it) {
    greedy(mdp, v, maximize, &next);
    const double delta = (next - v).cwiseAbs().maxCoeff();
    v = next;
    if (delta < tol * zeta) break;
  }

  // Policy iteration polish: each step strictly improves, so it terminates.
  std::vector<int> act = greedy(mdp, v, maximize, nullptr);
  Vector values = evaluate_deterministic(mdp, act);
  for (int round = 0; round < 100; ++round) {
    std::vector<int> improved = greedy(mdp, values, maximize, nullptr);
    if (improved == act) break;
    Vector improved_values = evaluate_deterministic(mdp, improved);
    const double change = maximize ? (improved_values - values).maxCoeff()
                                   : (values - improved_values).maxCoeff();
    if (!(change > 1e-14 * (1.0 + values.cwiseAbs().maxCoeff()))) break;
    act = std::move(improved);
    values = std::move(improved_values);
  }

  Vector backup;
  greedy(mdp, values, maximize, &backup);
  BestResponse out;
  out.policy = deterministic_policy(act, mdp.num_actions);
  out.values = values;
  out.value = game.initial_dist().dot(values);
  out.tol = (backup - values).cwiseAbs().maxCoeff() / zeta;
  return out;
}

MatrixGameSolution solve_matrix_game(const Matrix& M, double tol) {
  if (!(tol > 0.0)) throw DomainError("solve_matrix_game requires tol > 0");
  if (M.rows() < 1 || M.cols() < 1 || !M.allFinite()) {
    throw DomainError("solve_matrix_game requires a finite nonempty matrix");
  }
  const int m = static_cast<int>(M.rows());
  const int n = static_cast<int>(M.cols());
  // Shift to a positive payoff; the row player then solves
  //   max 1^T u  s.t.  M'^T u <= 1, u >= 0
  // with x = u / 1^T u, and the slack duals give the column player's y.
  const double shift = 1.0 - M.minCoeff();
  const Matrix Pt = (M.array() + shift).matrix().transpose();
  const int nc = n;  // constraints, one per column action
  const int nv = m;  // variables, one per row action

  const int width = nv + nc + 1;
  Matrix T = Matrix::Zero(nc + 1, width);
  T.topLeftCorner(nc, nv) = Pt;
  T.block(0, nv, nc, nc).setIdentity();
  T.block(0, width - 1, nc, 1).setOnes();
  T.block(nc, 0, 1, nv).setConstant(-1.0);
  std::vector<int> basis(nc);
  for (int i = 0; i < nc; ++i) basis[i] = nv + i;

  // Bland's rule: lowest entering index, lowest basis index among ties.
  constexpr double kPivotEps = 1e-12;
  for (int iter = 0; iter < 50 * (nc + nv) + 1000; ++iter) {
    int enter = -1;
    for (int j = 0; j < nv + nc; ++j) {
      if (T(nc, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < nc; ++i) {
      if (T(i, enter) > kPivotEps) {
        const double ratio = T(i, width - 1) / T(i, enter);
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best_ratio = std::min(best_ratio, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) throw InternalError("matrix game LP unbounded");
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= nc; ++i) {
      if (i != leave && T(i, enter) != 0.0) {
        T.row(i) -= T(i, enter) * T.row(leave);
      }
    }
    basis[leave] = enter;
  }

  Vector u = Vector::Zero(nv);
  for (int i = 0; i < nc; ++i) {
    if (basis[i] < nv) u[basis[i]] = std::max(0.0, T(i, width - 1));
  }
  Vector w(nc);
  for (int i = 0; i < nc; ++i) w[i] = std::max(0.0, T(nc, nv + i));
  const double usum = u.sum();
  const double wsum = w.sum();
  if (!(wsum > 0.0) || !(usum > 0.0)) {
    throw InternalError("matrix game LP returned an empty strategy");
  }

  MatrixGameSolution out;
  out.x = u / usum;
  out.y = w / wsum;
  const double upper = (out.x.transpose() * M).maxCoeff();
  const double lower = (M * out.y).minCoeff();
  out.gap = upper - lower;
  out.value = 0.5 * (upper + lower);
  if (out.gap > tol) {
    throw InternalError("matrix game certificate gap above tolerance");
  }
  return out;
}

ShapleyResult shapley_value(const StochasticGame& game, double tol) {
  if (!(tol > 0.0)) throw DomainError("shapley_value requires tol > 0");
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  const double zeta = game.zeta();
  const double lp_tol = std::max(1e-12, 1e-3 * tol);

  auto stage_matrix = [&](int s, const Vector& v) {
    Matrix M(A, B);
    for (int a = 0; a < A; ++a) {
      for (int b = 0; b < B; ++b) {
        const double* row = game.transition_row(s, a, b);
        double cont = 0.0;
        for (int k = 0; k < S; ++k) cont += row[k] * v[k];
        M(a, b) = game.reward(s, a, b) + cont;
      }
    }
    return M;
  };

  ShapleyResult out;
  out.x_eq = PolicyTable::Zero(S, A);
  out.y_eq = PolicyTable::Zero(S, B);
  Vector v = Vector::Zero(S);
  Vector next(S);
  const int cap = 100000;
  for (int it = 1; it <= cap; ++it) {
    for (int s = 0; s < S; ++s) {
      const MatrixGameSolution sol = solve_matrix_game(stage_matrix(s, v), lp_tol);
      next[s] = sol.value;
      out.x_eq.row(s) = sol.x.transpose();
      out.y_eq.row(s) = sol.y.transpose();
    }
    const double delta = (next - v).cwiseAbs().maxCoeff();
    v = next;
    out.iterations = it;
    if (delta < tol * zeta) break;
  }
  out.values = v;
  out.v_rho = game.initial_dist().dot(v);
  return out;
}

NashGaps nash_gaps(const StochasticGame& game, const PolicyPoint& point,
                   double v_star, double tol) {
  const BestResponse vs_x =
      best_response(game, executed_policy(point, Side::kMin), Side::kMax, tol);
  const BestResponse vs_y =
      best_response(game, executed_policy(point, Side::kMax), Side::kMin, tol);
  NashGaps gaps;
  gaps.primal = vs_x.value - v_star;
  gaps.dual = v_star - vs_y.value;
  gaps.pd = vs_x.value - vs_y.value;
  return gaps;
}

NashGaps nash_gaps(const StochasticGame& game, const PolicyPoint& point,
                   double tol) {
  return nash_gaps(game, point, shapley_value(game, tol).v_rho, tol);
}

GdResiduals gradient_dominance_residuals(const StochasticGame& game,
                                         const PolicyPoint& point,
                                         double mismatch_bound, double tol) {
  const double zeta = game.zeta();
  const GradientPair g = exact_gradient(game, point);
  const PolicyTable pi1 = executed_policy(point, Side::kMin);
  const PolicyTable pi2 = executed_policy(point, Side::kMax);
  const double v = policy_value(game, pi1, pi2);

  // max over xbar in the product of simplices of <g, x - xbar>: each row puts
  // all of xbar's mass on its smallest gradient entry.
  double dir_x = 0.0;
  for (int s = 0; s < game.num_states(); ++s) {
    dir_x += g.x.row(s).dot(point.x.row(s)) - g.x.row(s).minCoeff();
  }
  double dir_y = 0.0;
  for (int s = 0; s < game.num_states(); ++s) {
    dir_y += g.y.row(s).maxCoeff() - g.y.row(s).dot(point.y.row(s));
  }

  const double min_v = best_response(game, pi2, Side::kMin, tol).value;
  const double max_v = best_response(game, pi1, Side::kMax, tol).value;
  const double z3 = zeta * zeta * zeta;
  GdResiduals res;
  res.res_x = mismatch_bound * (dir_x / zeta + 2.0 * point.eps_x / z3) -
              (v - min_v);
  res.res_y = mismatch_bound * (dir_y / zeta + 2.0 * point.eps_y / z3) -
              (max_v - v);
  return res;
}

double distribution_mismatch(const VisitationResult& visit, const Vector& rho,
                             double tol) {
  double worst = 0.0;
  for (int s = 0; s < rho.size(); ++s) {
    if (rho[s] > 0.0) {
      worst = std::max(worst, visit.d[s] / rho[s]);
    } else if (visit.d[s] > tol) {
      return kInf;
    }
  }
  return worst;
}

namespace {

// min over deterministic rho-optimal responses of ||d/rho||, against a
// fixed opponent table.
double min_mismatch_over_responses(const StochasticGame& game,
                                   const PolicyTable& fixed, Side responder,
                                   double tol, long long* evaluations) {
  const int S = game.num_states();
  const int n = game.num_actions(responder);
  const long long count = deterministic_policy_count(S, n);
  std::vector<double> values(static_cast<std::size_t>(count));
  std::vector<PolicyTable> tables;
  tables.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    tables.push_back(deterministic_policy(decode(i, S, n), n));
    const PolicyTable& t = tables.back();
    values[i] = responder == Side::kMin ? policy_value(game, t, fixed)
                                        : policy_value(game, fixed, t);
  }
  *evaluations += count;
  const double best = responder == Side::kMin
                          ? *std::min_element(values.begin(), values.end())
                          : *std::max_element(values.begin(), values.end());
  const double slack = best_response_slack(tol, game.zeta());
  double result = kInf;
  for (long long i = 0; i < count; ++i) {
    const bool optimal = responder == Side::kMin ? values[i] <= best + slack
                                                 : values[i] >= best - slack;
    if (!optimal) continue;
    const VisitationResult visit =
        responder == Side::kMin ? visitation(game, tables[i], fixed)
                                : visitation(game, fixed, tables[i]);
    result = std::min(result,
                      distribution_mismatch(visit, game.initial_dist(), tol));
  }
  return result;
}

}  // namespace

MismatchEstimate mismatch_lower_bound(const StochasticGame& game,
                                      MismatchMode mode, long long budget,
                                      double tol, std::uint64_t seed) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  const long long count_a = deterministic_policy_count(S, A);
  const long long count_b = deterministic_policy_count(S, B);
  if (count_a < 0 || count_b < 0 || count_a > budget || count_b > budget) {
    throw BudgetExceeded("deterministic policy count exceeds budget " +
                         std::to_string(budget));
  }
  MismatchEstimate est;
  est.vertex_bound = mode == MismatchMode::kEnumerate;
  if (mode == MismatchMode::kEnumerate) {
    for (long long j = 0; j < count_b; ++j) {
      const PolicyTable pi2 = deterministic_policy(decode(j, S, B), B);
      est.min_side = std::max(est.min_side,
                              min_mismatch_over_responses(
                                  game, pi2, Side::kMin, tol, &est.evaluations));
    }
    for (long long i = 0; i < count_a; ++i) {
      const PolicyTable pi1 = deterministic_policy(decode(i, S, A), A);
      est.max_side = std::max(est.max_side,
                              min_mismatch_over_responses(
                                  game, pi1, Side::kMax, tol, &est.evaluations));
    }
  } else {
    RngStream rng(seed, 0);
    for (long long k = 0; k < budget; ++k) {
      const PolicyTable pi2 = sample_policy(rng, S, B);
      est.min_side = std::max(est.min_side,
                              min_mismatch_over_responses(
                                  game, pi2, Side::kMin, tol, &est.evaluations));
      const PolicyTable pi1 = sample_policy(rng, S, A);
      est.max_side = std::max(est.max_side,
                              min_mismatch_over_responses(
                                  game, pi1, Side::kMax, tol, &est.evaluations));
    }
  }
  est.value = std::max(est.min_side, est.max_side);
  return est;
}

ConcentrabilityWitness deterministic_concentrability(
    const StochasticGame& game, long long budget, double tol) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  const long long count_a = deterministic_policy_count(S, A);
  const long long count_b = deterministic_policy_count(S, B);
  if (count_a < 0 || count_b < 0 || count_a > budget / std::max(1LL, count_b)) {
    throw BudgetExceeded("deterministic pair count exceeds budget " +
                         std::to_string(budget));
  }
  const Vector& rho = game.initial_dist();
  ConcentrabilityWitness best;
  best.value = -1.0;
  for (long long i = 0; i < count_a; ++i) {
    const std::vector<int> a_act = decode(i, S, A);
    const PolicyTable pi1 = deterministic_policy(a_act, A);
    for (long long j = 0; j < count_b; ++j) {
      const std::vector<int> b_act = decode(j, S, B);
      const VisitationResult visit =
          visitation(game, pi1, deterministic_policy(b_act, B));
      const double ratio = distribution_mismatch(visit, rho, tol);
      if (ratio > best.value) {
        best.value = ratio;
        best.min_actions = a_act;
        best.max_actions = b_act;
        best.state = -1;
        double worst = -1.0;
        for (int s = 0; s < S; ++s) {
          const double r = rho[s] > 0.0 ? visit.d[s] / rho[s]
                                        : (visit.d[s] > tol ? kInf : 0.0);
          if (r > worst) {
            worst = r;
            best.state = s;
          }
        }
      }
      if (std::isinf(best.value)) return best;
    }
  }
  return best;
}

RegularityConstants regularity_constants(const StochasticGame& game,
                                         double eps_x, double eps_y,
                                         double mismatch) {
  const double zeta = game.zeta();
  const double A = game.num_actions_min();
  const double B = game.num_actions_max();
  const double AB = std::max(A, B);
  const double z2 = zeta * zeta;
  RegularityConstants c;
  c.ell = 4.0 * AB / (z2 * zeta);
  c.lip = 2.0 * std::sqrt(AB) / z2;
  c.var_x = eps_x > 0.0 ? 24.0 * A * A / (eps_x * z2 * z2) : kInf;
  c.var_y = eps_y > 0.0 ? 24.0 * B * B / (eps_y * z2 * z2) : kInf;
  c.mu = mismatch > 0.0 ? zeta / mismatch : kInf;
  return c;
}

}  // namespace sgrl
