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

#ifndef SGRL_EXACT_EVAL_HPP_
#define SGRL_EXACT_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "sgrl/game.hpp"

namespace sgrl {

// Values of a policy pair. q and adv are laid out [s][a][b].
struct EvalBundle {
  Vector v;
  std::vector<double> q;
  std::vector<double> adv;
  double v_rho = 0.0;
  int num_actions_min = 0;
  int num_actions_max = 0;

  double q_at(int s, int a, int b) const {
    return q[(static_cast<std::size_t>(s) * num_actions_min + a) *
                 num_actions_max + b];
  }
  double adv_at(int s, int a, int b) const {
    return adv[(static_cast<std::size_t>(s) * num_actions_min + a) *
                   num_actions_max + b];
  }
};

// Expected (dtilde) and normalized (d) state occupancy along an episode.
// total = sum_s dtilde(s) is the expected episode length.
struct VisitationResult {
  Vector dtilde;
  Vector d;
  double total = 0.0;
};

struct GradientPair {
  Matrix x;
  Matrix y;
};

struct PolicyPair {
  PolicyTable min;
  PolicyTable max;
};

struct BestResponse {
  PolicyTable policy;  // deterministic
  Vector values;       // per-state values of (policy, fixed opponent)
  double value = 0.0;  // rho-weighted
  double tol = 0.0;    // bound on the distance of `values` to the optimum
};

struct MatrixGameSolution {
  Vector x;  // row (min) player
  Vector y;  // column (max) player
  double value = 0.0;
  // max_b (x^T M)_b - min_a (M y)_a
  double gap = 0.0;
};

struct ShapleyResult {
  Vector values;
  PolicyTable x_eq;
  PolicyTable y_eq;
  double v_rho = 0.0;
  int iterations = 0;
};

struct NashGaps {
  double primal = 0.0;
  double dual = 0.0;
  double pd = 0.0;
};

struct GdResiduals {
  double res_x = 0.0;
  double res_y = 0.0;
};

enum class MismatchMode { kEnumerate, kSample };

struct MismatchEstimate {
  double value = 0.0;     // max of the two sides
  double min_side = 0.0;  // max_{pi2} min_{pi1 in BR(pi2)} ||d/rho||
  double max_side = 0.0;  // max_{pi1} min_{pi2 in BR(pi1)} ||d/rho||
  // Enumerate mode restricts both the outer max and the best-response sets
  // to deterministic policies; the inner vertex min over-estimates the
  // polytope min. Sample mode under-estimates the outer max.
  bool vertex_bound = false;
  long long evaluations = 0;
};

struct RegularityConstants {
  double ell = 0.0;    // gradient Lipschitz bound 4(A v B)/zeta^3
  double lip = 0.0;    // value Lipschitz bound 2 sqrt(A v B)/zeta^2
  double var_x = 0.0;  // 24 A^2 / (eps_x zeta^4)
  double var_y = 0.0;  // 24 B^2 / (eps_y zeta^4)
  double mu = 0.0;     // zeta / C_G
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Policy tables enter linearly, so rows need not be normalized; this is what
// makes coordinate-wise finite differences of v_rho meaningful.
EvalBundle evaluate_policies(const StochasticGame& game, const PolicyTable& pi1,
                             const PolicyTable& pi2);
EvalBundle value_bundle(const StochasticGame& game, const PolicyPoint& point);
double policy_value(const StochasticGame& game, const PolicyTable& pi1,
                    const PolicyTable& pi2);

VisitationResult visitation(const StochasticGame& game, const PolicyTable& pi1,
                            const PolicyTable& pi2);
VisitationResult visitation(const StochasticGame& game, const PolicyTable& pi1,
                            const PolicyTable& pi2, const Vector& start);
VisitationResult visitation(const StochasticGame& game,
                            const PolicyPoint& point);

// Gradient of V_rho with respect to the direct parameters x and y, including
// the (1 - eps) factor of the exploration map. grad.y ascends V.
GradientPair exact_gradient(const StochasticGame& game,
                            const PolicyPoint& point);

// |V(p) - V(p') - sum_s dtilde^p(s) E_{p}[A^{p'}]|. The identity holds for
// any two joint policies; the usual statement has one player fixed.
double performance_difference_residual(const StochasticGame& game,
                                       const PolicyPair& p,
                                       const PolicyPair& p_alt);

// Best response of `responder` against the fixed opponent table. Value
// iteration to sup-norm update < tol * zeta, then policy iteration on the
// greedy policy; the reported values are the exact values of the returned
// deterministic policy.
BestResponse best_response(const StochasticGame& game, const PolicyTable& fixed,
                           Side responder, double tol);

// min_x max_y x^T M y over simplices via the simplex method on the
// standard reduction; the gap field is the duality certificate.
MatrixGameSolution solve_matrix_game(const Matrix& M, double tol);

ShapleyResult shapley_value(const StochasticGame& game, double tol);

NashGaps nash_gaps(const StochasticGame& game, const PolicyPoint& point,
                   double tol);
// Same, with a precomputed minimax value.
NashGaps nash_gaps(const StochasticGame& game, const PolicyPoint& point,
                   double v_star, double tol);

// Slack of the two-sided gradient dominance inequality at `point`; both
// entries are >= 0 when mismatch_bound dominates the relevant mismatch.
GdResiduals gradient_dominance_residuals(const StochasticGame& game,
                                         const PolicyPoint& point,
                                         double mismatch_bound, double tol);

// ||d/rho||_inf; +inf if some state with rho(s) = 0 has d(s) > tol.
double distribution_mismatch(const VisitationResult& visit, const Vector& rho,
                             double tol);

MismatchEstimate mismatch_lower_bound(const StochasticGame& game,
                                      MismatchMode mode, long long budget,
                                      double tol, std::uint64_t seed = 0);

// Largest ||d/rho||_inf over all deterministic policy pairs, with the first
// (lexicographic) pair attaining it and the state responsible.
struct ConcentrabilityWitness {
  double value = 0.0;
  std::vector<int> min_actions;
  std::vector<int> max_actions;
  int state = -1;
};
ConcentrabilityWitness deterministic_concentrability(
    const StochasticGame& game, long long budget, double tol);

RegularityConstants regularity_constants(const StochasticGame& game,
                                         double eps_x, double eps_y,
                                         double mismatch);

// Number of deterministic policies (num_actions^num_states) or -1 on
// overflow past 2^62.
long long deterministic_policy_count(int num_states, int num_actions);

// Calls fn(actions) for every deterministic policy in lexicographic order,
// state 0 most significant.
void for_each_deterministic(int num_states, int num_actions,
                            const std::function<void(const std::vector<int>&)>& fn);

}  // namespace sgrl

#endif  // SGRL_EXACT_EVAL_HPP_
