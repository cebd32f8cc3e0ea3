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

#include "sgrl/learners.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sgrl/numeric.hpp"

namespace sgrl {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Recorder {
 public:
  Recorder(const SaddleOracle& oracle, RunHistory* history)
      : oracle_(oracle), history_(history) {}

  void log(long long iter, const Matrix& x, const Matrix& y) {
    RunRecord rec;
    rec.iter = iter;
    const GradientPair g = oracle_.gradient(x, y);
    rec.grad_norm_x = g.x.norm();
    rec.grad_norm_y = g.y.norm();
    if (const auto gaps = oracle_.gaps(x, y)) {
      rec.primal_gap = gaps->primal;
      rec.dual_gap = gaps->dual;
      rec.pd_gap = gaps->pd;
    } else {
      rec.primal_gap = rec.dual_gap = rec.pd_gap = kNaN;
    }
    primal_sum_.add(rec.primal_gap);
    rec.avg_primal_gap =
        primal_sum_.value() / static_cast<double>(history_->records.size() + 1);
    history_->records.push_back(rec);
  }

 private:
  const SaddleOracle& oracle_;
  RunHistory* history_;
  CompensatedSum primal_sum_;
};

void check_start(const SaddleOracle& oracle, const Matrix& x0,
                 const Matrix& y0) {
  if (!oracle.domain_x().contains(x0, 1e-9) ||
      !oracle.domain_y().contains(y0, 1e-9)) {
    throw DomainError("starting point lies outside the oracle domain");
  }
}

GradientPair draw(const SaddleOracle& oracle, const Matrix& x, const Matrix& y,
                  GradientMode mode, RngStream& rng) {
  if (mode == GradientMode::kExact) return oracle.gradient(x, y);
  if (!oracle.is_stochastic()) {
    throw UnsupportedMode("oracle has no stochastic gradients");
  }
  return oracle.sample_gradient(x, y, rng);
}

}  // namespace

GradientMode parse_gradient_mode(const std::string& text) {
  if (text == "exact") return GradientMode::kExact;
  if (text == "sampled") return GradientMode::kSampled;
  throw UnsupportedMode("unknown gradient mode '" + text + "'");
}

const char* to_string(GradientMode mode) {
  return mode == GradientMode::kExact ? "exact" : "sampled";
}

void LearnerConfig::check() const {
  if (!(eta_x >= 0.0) || !(eta_y >= 0.0) || !std::isfinite(eta_x) ||
      !std::isfinite(eta_y)) {
    throw DomainError("step sizes must be finite and nonnegative");
  }
  if (!(eps_x >= 0.0 && eps_x <= 1.0 && eps_y >= 0.0 && eps_y <= 1.0)) {
    throw DomainError("exploration levels must lie in [0, 1]");
  }
  if (iters < 1) throw DomainError("iters must be >= 1");
  if (log_every < 1) throw DomainError("log_every must be >= 1");
}

void RunHistory::write_csv(std::ostream& os) const {
  os << "iter,primal_gap,dual_gap,pd_gap,grad_norm_x,grad_norm_y,"
        "avg_primal_gap\n";
  for (const RunRecord& r : records) {
    os << r.iter << ',' << format_double(r.primal_gap) << ','
       << format_double(r.dual_gap) << ',' << format_double(r.pd_gap) << ','
       << format_double(r.grad_norm_x) << ',' << format_double(r.grad_norm_y)
       << ',' << format_double(r.avg_primal_gap) << '\n';
  }
}

std::string RunHistory::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

std::pair<Matrix, Matrix> sgda_step(const SaddleOracle& oracle,
                                    const Matrix& x, const Matrix& y,
                                    double eta_x, double eta_y,
                                    GradientMode mode, RngStream& rng) {
  const GradientPair g = draw(oracle, x, y, mode, rng);
  return {oracle.domain_x().project(x - eta_x * g.x),
          oracle.domain_y().project(y + eta_y * g.y)};
}

RunHistory run_two_timescale(const SaddleOracle& oracle, const Matrix& x0,
                             const Matrix& y0, const LearnerConfig& config) {
  config.check();
  check_start(oracle, x0, y0);
  if (config.mode == GradientMode::kSampled && !oracle.is_stochastic()) {
    throw UnsupportedMode("oracle has no stochastic gradients");
  }
  RunHistory history;
  Recorder recorder(oracle, &history);
  Matrix x = x0;
  Matrix y = y0;
  Matrix x_sum = Matrix::Zero(x.rows(), x.cols());
  Matrix y_sum = Matrix::Zero(y.rows(), y.cols());
  for (long long it = 0; it < config.iters; ++it) {
    if (it % config.log_every == 0) recorder.log(it, x, y);
    x_sum += x;
    y_sum += y;
    RngStream rng(config.seed, static_cast<std::uint64_t>(it));
    std::tie(x, y) =
        sgda_step(oracle, x, y, config.eta_x, config.eta_y, config.mode, rng);
  }
  recorder.log(config.iters, x, y);
  history.x = x;
  history.y = y;
  history.x_avg = x_sum / static_cast<double>(config.iters);
  history.y_avg = y_sum / static_cast<double>(config.iters);
  return history;
}

Theorem1Rates theorem1_rates(double epsilon, int num_states, int num_actions_min,
                             int num_actions_max, double zeta, double mismatch,
                             const Theorem1Constants& c) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("epsilon must lie in (0, 1]");
  }
  if (num_states < 1 || num_actions_min < 1 || num_actions_max < 1 ||
      !(zeta > 0.0 && zeta <= 1.0) || !(mismatch > 0.0)) {
    throw DomainError("theorem1_rates arguments must be positive");
  }
  const double S = num_states;
  const double n = std::max(num_actions_min, num_actions_max);
  const double e = epsilon;
  const double z = zeta;
  const double C = mismatch;
  Theorem1Rates r;
  r.eta_x = c.eta_x * std::pow(e, 10.5) * std::pow(z, 44.5) /
            (std::pow(C, 15.5) * std::pow(n, 9.75) * std::pow(S, 0.75));
  r.eta_y = c.eta_y * std::pow(e, 6.0) * std::pow(z, 27.0) /
            (std::pow(C, 9.0) * std::pow(n, 6.0) * std::sqrt(S));
  r.eps_x = c.eps_x * std::pow(z, 3.0) * e / (std::sqrt(S) * std::sqrt(n) * C);
  r.eps_y = c.eps_y * std::pow(z, 8.0) * e * e /
            (std::pow(C, 3.0) * n * std::sqrt(S));
  r.iters = c.iters * std::pow(n, 10.75) * std::pow(S, 1.25) *
            std::pow(C, 17.5) / (std::pow(e, 12.5) * std::pow(z, 48.5));
  return r;
}

std::pair<Matrix, Matrix> eg_step(const SaddleOracle& oracle, const Matrix& x,
                                  const Matrix& y, double eta,
                                  GradientMode mode) {
  if (mode != GradientMode::kExact) {
    throw UnsupportedMode("extragradient runs on exact gradients only");
  }
  const Domain dx = oracle.domain_x();
  const Domain dy = oracle.domain_y();
  const GradientPair g0 = oracle.gradient(x, y);
  const Matrix x_half = dx.project(x - eta * g0.x);
  const Matrix y_half = dy.project(y + eta * g0.y);
  const GradientPair g1 = oracle.gradient(x_half, y_half);
  return {dx.project(x - eta * g1.x), dy.project(y + eta * g1.y)};
}

RunHistory run_extragradient(const SaddleOracle& oracle, const Matrix& x0,
                             const Matrix& y0, double eta, long long iters,
                             long long log_every, GradientMode mode) {
  if (mode != GradientMode::kExact) {
    throw UnsupportedMode("extragradient runs on exact gradients only");
  }
  if (!(eta > 0.0) || iters < 1 || log_every < 1) {
    throw DomainError("extragradient needs eta > 0, iters >= 1, log_every >= 1");
  }
  check_start(oracle, x0, y0);
  RunHistory history;
  Recorder recorder(oracle, &history);
  Matrix x = x0;
  Matrix y = y0;
  Matrix x_sum = Matrix::Zero(x.rows(), x.cols());
  Matrix y_sum = Matrix::Zero(y.rows(), y.cols());
  for (long long it = 0; it < iters; ++it) {
    if (it % log_every == 0) recorder.log(it, x, y);
    x_sum += x;
    y_sum += y;
    std::tie(x, y) = eg_step(oracle, x, y, eta, mode);
  }
  recorder.log(iters, x, y);
  history.x = x;
  history.y = y;
  history.x_avg = x_sum / static_cast<double>(iters);
  history.y_avg = y_sum / static_cast<double>(iters);
  return history;
}

}  // namespace sgrl
