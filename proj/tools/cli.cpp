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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sgrl/diagnostics.hpp"
#include "sgrl/exact_eval.hpp"
#include "sgrl/game.hpp"
#include "sgrl/game_io.hpp"
#include "sgrl/learners.hpp"
#include "sgrl/numeric.hpp"
#include "sgrl/oracle.hpp"
#include "sgrl/parallel.hpp"
#include "sgrl/rng.hpp"
#include "sgrl/simplex.hpp"
#include "svg.hpp"

namespace sgrl::tools {
namespace {

namespace fs = std::filesystem;

// Bad flag values or files that cannot be interpreted.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

struct Options {
  // game source
  std::string game_path;
  std::string preset;
  std::string random_sizes;
  std::uint64_t game_seed = 0;
  double zeta = 0.5;
  // dynamics
  std::uint64_t seed = 0;
  std::string out_dir;
  long long iters = 0;
  long long log_every = 100;
  double eta_x = 1e-3;
  double eta_y = 1e-1;
  double eta = 0.01;
  double eps_x = 0.0;
  double eps_y = 0.0;
  std::string mode = "exact";
  std::string rates;
  double epsilon = 0.0;
  double mismatch = 0.0;
  std::string x0;
  std::string y0;
  bool independent = false;
  // commands with positionals
  std::vector<std::string> positional;
  // grids and suites
  int resolution = 201;
  std::string ref;
  int count = 20;
  double zeta_min = 0.2;
  int states = 1;
  int actions = 2;
  long long sgda_iters = 20000;
};

struct Source {
  std::optional<StochasticGame> game;
  std::optional<RatioGame> ratio;
  std::string name;
};

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not a number list: '" + text + "'");
    }
  }
  return out;
}

Matrix parse_table(const std::string& text, int rows, int cols,
                   const char* flag) {
  const std::vector<double> v = parse_numbers(text);
  if (static_cast<int>(v.size()) != rows * cols) {
    throw InputError(std::string(flag) + " needs " +
                     std::to_string(rows * cols) + " comma-separated values");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  }
  return m;
}

std::optional<RatioGame> ratio_preset(const std::string& name) {
  if (name == "appd1") return appd_game1();
  if (name == "appd2") return appd_game2();
  return std::nullopt;
}

Source resolve_source(const Options& o) {
  const int given = !o.game_path.empty() + !o.preset.empty() +
                    !o.random_sizes.empty();
  if (given != 1) {
    throw InputError("give exactly one of --game, --preset, --random");
  }
  Source src;
  if (!o.game_path.empty()) {
    src.game = load_game_json(o.game_path);
    src.name = o.game_path;
  } else if (!o.preset.empty()) {
    src.name = o.preset;
    if (auto r = ratio_preset(o.preset)) {
      src.ratio = *r;
      src.game = ratio_to_game(*r);
    } else if (o.preset == "prop31") {
      src.game = prop31_game(o.zeta);
    } else {
      throw InputError("unknown preset '" + o.preset +
                       "' (expected appd1, appd2 or prop31)");
    }
  } else {
    const std::vector<double> v = parse_numbers(o.random_sizes);
    if (v.size() != 4) throw InputError("--random expects S,A,B,ZETA_MIN");
    src.game = random_game(static_cast<int>(v[0]), static_cast<int>(v[1]),
                           static_cast<int>(v[2]), v[3], o.game_seed);
    src.name = "random:" + o.random_sizes + "@" + std::to_string(o.game_seed);
  }
  return src;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  os << content;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

fs::path out_path(const Options& o, const std::string& file) {
  return fs::path(o.out_dir.empty() ? "." : o.out_dir) / file;
}

std::pair<Matrix, Matrix> start_point(const Options& o, const Domain& dx,
                                      const Domain& dy) {
  Matrix x = o.x0.empty()
                 ? Matrix::Constant(dx.rows, dx.cols, 1.0 / dx.cols)
                 : parse_table(o.x0, dx.rows, dx.cols, "--x0");
  Matrix y = o.y0.empty()
                 ? Matrix::Constant(dy.rows, dy.cols, 1.0 / dy.cols)
                 : parse_table(o.y0, dy.rows, dy.cols, "--y0");
  return {x, y};
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  std::string path = o.game_path;
  if (path.empty() && !o.positional.empty()) path = o.positional[0];
  if (path.empty()) throw InputError("validate needs a game file");
  const StochasticGame game = load_game_json(path, /*validate=*/false);
  const ValidationReport report = validate_game(game);
  out << format_report(report);
  return report.ok ? kExitOk : kExitDomain;
}

int cmd_prop31(const Options& o, std::ostream& out) {
  const StochasticGame game = prop31_game(o.zeta);
  const double tol = 1e-10;
  constexpr int kWitness = 2;  // printed 1-based as state 3
  out << "game: prop31 zeta=" << format_double(o.zeta)
      << " (states numbered from 1)\n";

  const MismatchEstimate cg =
      mismatch_lower_bound(game, MismatchMode::kEnumerate, 1 << 12, tol);
  const bool cg_finite = std::isfinite(cg.value);
  out << "C_G vertex bound: " << format_double(cg.value)
      << " (min side " << format_double(cg.min_side) << ", max side "
      << format_double(cg.max_side) << ", " << cg.evaluations
      << " evaluations)\n";

  const ConcentrabilityWitness w =
      deterministic_concentrability(game, 1 << 20, tol);
  const PolicyTable w1 = deterministic_policy(w.min_actions, 2);
  const PolicyTable w2 = deterministic_policy(w.max_actions, 2);
  const double d_witness = visitation(game, w1, w2).d[kWitness];
  const bool conc_infinite = std::isinf(w.value) && w.state == kWitness;
  out << "concentrability: "
      << (std::isinf(w.value) ? "infinite" : format_double(w.value))
      << " (witness state " << w.state + 1 << ")\n";
  auto actions = [](const std::vector<int>& a) {
    std::string s;
    for (int v : a) s += (s.empty() ? "" : " ") + std::to_string(v);
    return s;
  };
  out << "witness pair: min actions [" << actions(w.min_actions)
      << "], max actions [" << actions(w.max_actions) << "]\n";
  const bool witness_ok = d_witness > 0.0;
  out << "witness d(3) = " << format_double(d_witness) << " > 0: "
      << verdict(witness_ok) << '\n';

  // Every deterministic best-response pair keeps state 3 unvisited.
  const double slack = tol * (1.0 + 1.0 / game.zeta());
  long long pairs = 0;
  double worst = 0.0;
  for (Side responder : {Side::kMin, Side::kMax}) {
    for_each_deterministic(5, 2, [&](const std::vector<int>& fixed_act) {
      const PolicyTable fixed = deterministic_policy(fixed_act, 2);
      std::vector<std::pair<double, PolicyTable>> candidates;
      for_each_deterministic(5, 2, [&](const std::vector<int>& act) {
        const PolicyTable p = deterministic_policy(act, 2);
        const double v = responder == Side::kMin
                             ? policy_value(game, p, fixed)
                             : policy_value(game, fixed, p);
        candidates.emplace_back(v, p);
      });
      double best = candidates.front().first;
      for (const auto& c : candidates) {
        best = responder == Side::kMin ? std::min(best, c.first)
                                       : std::max(best, c.first);
      }
      for (const auto& c : candidates) {
        const bool optimal = responder == Side::kMin
                                 ? c.first <= best + slack
                                 : c.first >= best - slack;
        if (!optimal) continue;
        const VisitationResult visit =
            responder == Side::kMin ? visitation(game, c.second, fixed)
                                    : visitation(game, fixed, c.second);
        worst = std::max(worst, visit.d[kWitness]);
        ++pairs;
      }
    });
  }
  const bool br_ok = worst == 0.0;
  out << "best-response pairs checked: " << pairs
      << ", max d(3) = " << format_double(worst) << ": " << verdict(br_ok)
      << '\n';
  const bool ok = cg_finite && conc_infinite && witness_ok && br_ok;
  out << "C_G finite: " << verdict(cg_finite) << '\n';
  out << "concentrability infinite: " << verdict(conc_infinite) << '\n';
  out << "result: " << verdict(ok) << '\n';
  return ok ? kExitOk : kExitDomain;
}

int cmd_prop51(const Options& o, std::ostream& out) {
  double eps = 0.1;
  double s = 0.3;
  if (o.positional.size() == 2) {
    eps = parse_numbers(o.positional[0]).at(0);
    s = parse_numbers(o.positional[1]).at(0);
  } else if (!o.positional.empty()) {
    throw InputError("prop51 takes two arguments: EPS S");
  }
  const RatioGame ratio = prop51_ratio(eps, s);
  const RatioOracle oracle(ratio);
  const Matrix ne_x = (Matrix(1, 2) << 0.0, 1.0).finished();
  const Matrix ne_y = ne_x;
  const NashGaps gaps = *oracle.gaps(ne_x, ne_y);
  const bool gaps_ok = std::abs(gaps.primal) < 1e-10 &&
                       std::abs(gaps.dual) < 1e-10 &&
                       std::abs(gaps.pd) < 1e-10;

  const double zeta = ratio_to_game(ratio).zeta();
  const bool zeta_ok = std::abs(zeta - s) <= 1e-15;

  JointPoint z{Vector(2), Vector(2)};
  z.x << 1.0, 0.0;
  z.y << 1.0, 0.0;
  JointPoint z_ne{Vector(2), Vector(2)};
  z_ne.x << 0.0, 1.0;
  z_ne.y << 0.0, 1.0;
  const double inner = mvi_inner(ratio, z, z_ne);
  const double closed = (s + 2.0 * eps * s - 1.0) / (s * s);
  const bool mvi_ok = std::abs(inner - closed) < 1e-9 && inner < 0.0;
  const double phi = ratio_phi(ratio, z.x);

  out << "game: prop51 eps=" << format_double(eps) << " s=" << format_double(s)
      << '\n';
  out << "minimax value: " << format_double(oracle.v_star()) << '\n';
  out << "NE gaps at ((0,1),(0,1)): primal=" << format_double(gaps.primal)
      << " dual=" << format_double(gaps.dual)
      << " pd=" << format_double(gaps.pd) << ": " << verdict(gaps_ok) << '\n';
  out << "embedded zeta: " << format_double(zeta) << ": " << verdict(zeta_ok)
      << '\n';
  out << "mvi_inner at ((1,0),(1,0)): " << format_double(inner)
      << " closed form: " << format_double(closed) << ": " << verdict(mvi_ok)
      << '\n';
  out << "Phi((1,0)): " << format_double(phi) << '\n';
  const bool ok = gaps_ok && zeta_ok && mvi_ok;
  out << "result: " << verdict(ok) << '\n';
  return ok ? kExitOk : kExitDomain;
}

JointPoint ratio_equilibrium(const RatioGame& ratio) {
  const ShapleyResult sh = shapley_value(ratio_to_game(ratio), 1e-13);
  return {sh.x_eq.row(0).transpose(), sh.y_eq.row(0).transpose()};
}

struct GridSummary {
  long long negative = 0;
  long long positive = 0;
  long long zero = 0;
};

GridSummary summarize(const Eigen::MatrixXi& grid) {
  GridSummary s;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const int v = grid.data()[i];
    (v < 0 ? s.negative : (v > 0 ? s.positive : s.zero))++;
  }
  return s;
}

// Negative cells inside the l_inf ball of `radius` around the reference.
long long negatives_near(const Eigen::MatrixXi& grid, const JointPoint& ref,
                         double lo, double hi) {
  const int res = static_cast<int>(grid.rows());
  long long count = 0;
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const double u = static_cast<double>(j) / (res - 1);
      const double w = static_cast<double>(i) / (res - 1);
      const double d = std::max(std::abs(u - ref.x[0]), std::abs(w - ref.y[0]));
      if (d > lo && d <= hi + 1e-12 && grid(i, j) < 0) ++count;
    }
  }
  return count;
}

int write_grid(const RatioGame& ratio, const JointPoint& ref, int res,
               const fs::path& csv, const fs::path& svg,
               const std::string& title, std::ostream& out,
               Eigen::MatrixXi* grid_out) {
  const Eigen::MatrixXi grid = mvi_sign_grid(ratio, ref, res);
  std::ostringstream os;
  write_sign_grid_csv(os, grid);
  write_file(csv, os.str());
  write_file(svg, heatmap_svg(grid, ref.x[0], ref.y[0], title));
  const GridSummary s = summarize(grid);
  out << "grid " << res << "x" << res << ": negative=" << s.negative
      << " positive=" << s.positive << " zero=" << s.zero << '\n';
  out << "reference: x1=" << format_double(ref.x[0])
      << " y1=" << format_double(ref.y[0]) << '\n';
  out << "wrote " << csv.string() << " and " << svg.string() << '\n';
  if (grid_out != nullptr) *grid_out = grid;
  return kExitOk;
}

std::vector<Series> gap_series(const RunHistory& h) {
  Series primal{"primal gap", "#d62728", {}};
  Series pd{"primal-dual gap", "#1f77b4", {}};
  for (const RunRecord& r : h.records) {
    primal.points.emplace_back(static_cast<double>(r.iter), r.primal_gap);
    pd.points.emplace_back(static_cast<double>(r.iter), r.pd_gap);
  }
  return {pd, primal};
}

int cmd_fig(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1) throw InputError("fig takes one of a|b|c|d");
  const std::string fig = o.positional[0];
  if (fig != "a" && fig != "b" && fig != "c" && fig != "d") {
    throw InputError("unknown figure '" + fig + "' (expected a|b|c|d)");
  }
  const bool first = fig == "a" || fig == "b";
  const RatioGame ratio = first ? appd_game1() : appd_game2();
  const std::string stem = "fig_" + fig;
  out << "figure " << fig << ": " << (first ? "appd1" : "appd2") << '\n';

  if (fig == "a" || fig == "c") {
    const JointPoint ne = ratio_equilibrium(ratio);
    Eigen::MatrixXi grid;
    write_grid(ratio, ne, o.resolution, out_path(o, stem + ".csv"),
               out_path(o, stem + ".svg"),
               std::string("sign of MVI inner product, ") +
                   (first ? "game 1" : "game 2"),
               out, &grid);
    const GridSummary s = summarize(grid);
    bool ok = false;
    if (fig == "a") {
      ok = s.negative > 0 && s.positive > 0;
      out << "both signs present: " << verdict(ok) << '\n';
    } else {
      const long long near = negatives_near(grid, ne, -1.0, 0.05);
      ok = near > 0;
      out << "negative cells within 0.05 of NE: " << near << ": "
          << verdict(ok) << '\n';
      const int res = o.resolution;
      int rings = 0;
      int rings_hit = 0;
      for (int k = 1; k * 1.0 / (res - 1) <= 0.05 + 1e-12; ++k) {
        ++rings;
        if (negatives_near(grid, ne, (k - 1.0) / (res - 1),
                           k * 1.0 / (res - 1)) > 0) {
          ++rings_hit;
        }
      }
      out << "rings around NE with negative cells: " << rings_hit << "/"
          << rings << '\n';
    }
    return ok ? kExitOk : kExitDomain;
  }

  const RatioOracle oracle(ratio);
  const long long iters = o.iters > 0 ? o.iters : 100000;
  const Matrix x0 = (Matrix(1, 2) << 1.0, 0.0).finished();
  const Matrix y0 = x0;
  const RunHistory h =
      run_extragradient(oracle, x0, y0, o.eta, iters, o.log_every);
  write_file(out_path(o, stem + ".csv"), h.to_csv());
  write_file(out_path(o, stem + ".svg"),
             line_plot_svg(gap_series(h), true, 1e-16,
                           std::string("extragradient, ") +
                               (first ? "game 1" : "game 2"),
                           "iteration", "gap (log10)"));
  const double initial = h.records.front().pd_gap;
  const double final_gap = h.records.back().pd_gap;
  double min_gap = initial;
  for (const RunRecord& r : h.records) min_gap = std::min(min_gap, r.pd_gap);
  long long increases = 0;
  for (std::size_t i = 1; i < h.records.size(); ++i) {
    if (h.records[i].pd_gap > h.records[i - 1].pd_gap) ++increases;
  }
  out << "eta=" << format_double(o.eta) << " iters=" << iters
      << " initial pd_gap=" << format_double(initial)
      << " min pd_gap=" << format_double(min_gap)
      << " final pd_gap=" << format_double(final_gap)
      << " increases=" << increases << '\n';
  out << "wrote " << out_path(o, stem + ".csv").string() << " and "
      << out_path(o, stem + ".svg").string() << '\n';
  bool ok = false;
  if (fig == "b") {
    ok = min_gap < 1e-4;
    out << "pd_gap < 1e-4 within run: " << verdict(ok) << '\n';
    out << "final pd_gap < 1e-4: " << verdict(final_gap < 1e-4) << '\n';
  } else {
    const bool shrink = min_gap < initial / 1e3;
    const bool oscillates = increases > 0;
    ok = shrink && oscillates;
    out << "pd_gap < initial/1e3 within run: " << verdict(shrink) << '\n';
    out << "final pd_gap < initial/1e3: " << verdict(final_gap < initial / 1e3)
        << '\n';
    out << "non-monotone pd_gap: " << verdict(oscillates) << '\n';
  }
  return ok ? kExitOk : kExitDomain;
}

int cmd_mvi_grid(const Options& o, std::ostream& out) {
  const std::string name = o.preset.empty() ? "appd1" : o.preset;
  const auto ratio = ratio_preset(name);
  if (!ratio) throw InputError("mvi-grid needs --preset appd1 or appd2");
  JointPoint ref = ratio_equilibrium(*ratio);
  if (!o.ref.empty()) {
    const std::vector<double> v = parse_numbers(o.ref);
    if (v.size() != 2) throw InputError("--ref expects X1,Y1");
    ref.x << v[0], 1.0 - v[0];
    ref.y << v[1], 1.0 - v[1];
  }
  return write_grid(*ratio, ref, o.resolution, out_path(o, "mvi_grid.csv"),
                    out_path(o, "mvi_grid.svg"), "sign of MVI inner product",
                    out, nullptr);
}

void emit_history(const Options& o, const RunHistory& h,
                  const std::string& file, std::ostream& out) {
  const RunRecord& last = h.records.back();
  if (o.out_dir.empty()) {
    h.write_csv(out);
    return;
  }
  write_file(out_path(o, file), h.to_csv());
  out << "final iter=" << last.iter
      << " primal_gap=" << format_double(last.primal_gap)
      << " dual_gap=" << format_double(last.dual_gap)
      << " pd_gap=" << format_double(last.pd_gap)
      << " avg_primal_gap=" << format_double(last.avg_primal_gap) << '\n';
  out << "wrote " << out_path(o, file).string() << '\n';
}

int cmd_train(const Options& o, bool eta_x_set, bool eta_y_set,
              bool eps_x_set, bool eps_y_set, bool iters_set,
              std::ostream& out, std::ostream& err) {
  const Source src = resolve_source(o);
  const StochasticGame& game = *src.game;
  LearnerConfig cfg;
  cfg.eta_x = o.eta_x;
  cfg.eta_y = o.eta_y;
  cfg.eps_x = o.eps_x;
  cfg.eps_y = o.eps_y;
  cfg.iters = iters_set ? o.iters : 1000;
  cfg.seed = o.seed;
  cfg.log_every = o.log_every;
  try {
    cfg.mode = parse_gradient_mode(o.mode);
  } catch (const UnsupportedMode& e) {
    throw InputError(e.what());
  }
  if (!o.rates.empty()) {
    if (o.rates != "theorem1") throw InputError("--rates accepts theorem1");
    if (eta_x_set || eta_y_set || eps_x_set || eps_y_set) {
      throw InputError("--rates conflicts with --eta-x/--eta-y/--eps-x/--eps-y");
    }
    if (!(o.epsilon > 0.0)) throw InputError("--rates needs --epsilon > 0");
    double cg = o.mismatch;
    if (!(cg > 0.0)) {
      cg = mismatch_lower_bound(game, MismatchMode::kEnumerate, 1 << 16, 1e-10)
               .value;
    }
    const Theorem1Rates r =
        theorem1_rates(o.epsilon, game.num_states(), game.num_actions_min(),
                       game.num_actions_max(), game.zeta(), cg);
    cfg.eta_x = r.eta_x;
    cfg.eta_y = r.eta_y;
    cfg.eps_x = r.eps_x;
    cfg.eps_y = r.eps_y;
    err << "theorem1 rates: C_G=" << format_double(cg)
        << " eta_x=" << format_double(r.eta_x)
        << " eta_y=" << format_double(r.eta_y)
        << " eps_x=" << format_double(r.eps_x)
        << " eps_y=" << format_double(r.eps_y)
        << " N=" << format_double(r.iters) << '\n';
  } else if (o.epsilon != 0.0) {
    throw InputError("--epsilon is only meaningful with --rates theorem1");
  }
  GameOracle oracle(game, cfg.eps_x, cfg.eps_y);
  oracle.set_independent_episodes(o.independent);
  const auto [x0, y0] = start_point(o, oracle.domain_x(), oracle.domain_y());
  const RunHistory h = run_two_timescale(oracle, x0, y0, cfg);
  emit_history(o, h, "train.csv", out);
  return kExitOk;
}

int cmd_eg(const Options& o, bool iters_set, std::ostream& out) {
  const Source src = resolve_source(o);
  std::unique_ptr<SaddleOracle> oracle;
  if (src.ratio) {
    oracle = std::make_unique<RatioOracle>(*src.ratio);
  } else {
    oracle = std::make_unique<GameOracle>(*src.game, o.eps_x, o.eps_y);
  }
  GradientMode mode;
  try {
    mode = parse_gradient_mode(o.mode);
  } catch (const UnsupportedMode& e) {
    throw InputError(e.what());
  }
  if (mode != GradientMode::kExact) {
    throw InputError("eg supports --mode exact only");
  }
  const auto [x0, y0] = start_point(o, oracle->domain_x(), oracle->domain_y());
  const RunHistory h = run_extragradient(*oracle, x0, y0, o.eta,
                                         iters_set ? o.iters : 100000,
                                         o.log_every, mode);
  emit_history(o, h, "eg.csv", out);
  return kExitOk;
}

struct SuiteRow {
  std::uint64_t game_seed = 0;
  double zeta = 0.0;
  double v_star = 0.0;
  double c_g = 0.0;
  double eg_pd_gap = 0.0;
  double sgda_pd_gap = 0.0;
  double sgda_avg_primal_gap = 0.0;
  int checks_passed = 0;
  int checks_total = 0;
};

SuiteRow run_suite_game(const Options& o, int index) {
  SuiteRow row;
  RngStream seeder(o.seed, static_cast<std::uint64_t>(index));
  row.game_seed = seeder.next_u64();
  std::unique_ptr<SaddleOracle> eg_oracle;
  std::optional<RatioGame> ratio;
  StochasticGame game = [&] {
    if (o.states == 1) {
      ratio = random_ratio_game(o.actions, o.actions, o.zeta_min,
                                row.game_seed);
      return ratio_to_game(*ratio);
    }
    return random_game(o.states, o.actions, o.actions, o.zeta_min,
                       row.game_seed);
  }();
  if (ratio) {
    eg_oracle = std::make_unique<RatioOracle>(*ratio);
  } else {
    eg_oracle = std::make_unique<GameOracle>(game, 0.0, 0.0);
  }
  const GameOracle sgda_oracle(game, o.eps_x, o.eps_y);
  row.zeta = game.zeta();
  row.v_star = sgda_oracle.v_star();
  row.c_g =
      mismatch_lower_bound(game, MismatchMode::kEnumerate, 1 << 16, 1e-10)
          .value;

  auto check = [&row](bool ok) {
    ++row.checks_total;
    if (ok) ++row.checks_passed;
  };

  const Domain dx = eg_oracle->domain_x();
  const Domain dy = eg_oracle->domain_y();
  const Matrix x0 = Matrix::Constant(dx.rows, dx.cols, 1.0 / dx.cols);
  const Matrix y0 = Matrix::Constant(dy.rows, dy.cols, 1.0 / dy.cols);
  const long long eg_iters = o.iters > 0 ? o.iters : 100000;
  const RunHistory eg =
      run_extragradient(*eg_oracle, x0, y0, o.eta, eg_iters, eg_iters);
  row.eg_pd_gap = eg.records.back().pd_gap;
  check(dx.contains(eg.x, 1e-10) && dy.contains(eg.y, 1e-10));
  check(row.eg_pd_gap >= -1e-9);

  LearnerConfig cfg;
  cfg.eta_x = o.eta_x;
  cfg.eta_y = o.eta_y;
  cfg.eps_x = o.eps_x;
  cfg.eps_y = o.eps_y;
  cfg.iters = o.sgda_iters;
  cfg.log_every = std::max<long long>(1, o.sgda_iters / 100);
  cfg.seed = row.game_seed;
  const RunHistory sg = run_two_timescale(sgda_oracle, x0, y0, cfg);
  row.sgda_pd_gap = sg.records.back().pd_gap;
  row.sgda_avg_primal_gap = sg.records.back().avg_primal_gap;
  check(sgda_oracle.domain_x().contains(sg.x, 1e-10) &&
        sgda_oracle.domain_y().contains(sg.y, 1e-10));
  check(row.sgda_pd_gap >= -1e-9);
  CompensatedSum primal;
  for (const RunRecord& r : sg.records) primal.add(r.primal_gap);
  check(std::abs(primal.value() / sg.records.size() -
                 row.sgda_avg_primal_gap) <= 1e-12);

  // Shapley certificate.
  const ShapleyResult sh = shapley_value(game, 1e-12);
  const NashGaps eq =
      nash_gaps(game, PolicyPoint{sh.x_eq, sh.y_eq, 0.0, 0.0}, sh.v_rho, 1e-12);
  check(eq.pd < 1e-6 && eq.pd >= -1e-9);

  // Performance difference between the final iterates and the equilibrium.
  const PolicyPair p{greedy_mix(sg.x, o.eps_x), greedy_mix(sg.y, o.eps_y)};
  const PolicyPair q{sh.x_eq, sh.y_eq};
  check(performance_difference_residual(game, p, q) < 1e-10);

  if (ratio) {
    // Quotient-rule field agrees with the game gradient up to a per-row shift.
    const JointPoint z{eg.x.row(0).transpose(), eg.y.row(0).transpose()};
    const Vector F = mvi_field(*ratio, z);
    const GradientPair g =
        exact_gradient(game, PolicyPoint{eg.x, eg.y, 0.0, 0.0});
    const int n = o.actions;
    const Vector fx = F.head(n).array() - F.head(n).mean();
    const Vector gx = g.x.row(0).transpose().array() - g.x.row(0).mean();
    const Vector fy = (-F.tail(n)).array() + F.tail(n).mean();
    const Vector gy = g.y.row(0).transpose().array() - g.y.row(0).mean();
    check((fx - gx).norm() < 1e-10 * (1.0 + gx.norm()) &&
          (fy - gy).norm() < 1e-10 * (1.0 + gy.norm()));
  }
  return row;
}

int cmd_random_suite(const Options& o, std::ostream& out) {
  if (o.count < 1 || o.states < 1 || o.actions < 1) {
    throw InputError("random-suite needs --count, --states, --actions >= 1");
  }
  if (deterministic_policy_count(o.states, o.actions) < 0 ||
      deterministic_policy_count(o.states, o.actions) > (1 << 16)) {
    throw BudgetExceeded("random-suite sizes exceed the enumeration budget");
  }
  std::vector<SuiteRow> rows(o.count);
  parallel_for(o.count, resolve_threads(0),
               [&](int i) { rows[i] = run_suite_game(o, i); });
  std::ostringstream csv;
  csv << "game,game_seed,zeta,v_star,c_g,eg_final_pd_gap,sgda_final_pd_gap,"
         "sgda_avg_primal_gap,checks_passed,checks_total\n";
  int converged = 0;
  int passed = 0;
  int total = 0;
  for (int i = 0; i < o.count; ++i) {
    const SuiteRow& r = rows[i];
    csv << i << ',' << r.game_seed << ',' << format_double(r.zeta) << ','
        << format_double(r.v_star) << ',' << format_double(r.c_g) << ','
        << format_double(r.eg_pd_gap) << ',' << format_double(r.sgda_pd_gap)
        << ',' << format_double(r.sgda_avg_primal_gap) << ','
        << r.checks_passed << ',' << r.checks_total << '\n';
    if (r.eg_pd_gap < 1e-3) ++converged;
    passed += r.checks_passed;
    total += r.checks_total;
  }
  if (o.out_dir.empty()) {
    out << csv.str();
  } else {
    write_file(out_path(o, "random_suite.csv"), csv.str());
    out << "wrote " << out_path(o, "random_suite.csv").string() << '\n';
  }
  out << "eg_converged " << converged << "/" << o.count
      << " (final pd gap < 1e-3)\n";
  out << "invariant_checks " << passed << "/" << total << '\n';
  return passed == total ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------

void add_source_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--game", o.game_path, "Game JSON file");
  cmd->add_option("--preset", o.preset, "appd1 | appd2 | prop31");
  cmd->add_option("--random", o.random_sizes,
                  "Random game S,A,B,ZETA_MIN (see --game-seed)");
  cmd->add_option("--game-seed", o.game_seed, "Seed of the random game");
  cmd->add_option("--zeta", o.zeta, "Stopping probability of prop31");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--seed", o.seed, "Random seed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Policy-gradient dynamics for zero-sum stochastic games", "sgrl"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a game file");
  validate->add_option("path", o.positional, "Game JSON file");
  validate->add_option("--game", o.game_path, "Game JSON file");

  auto* prop31 = app.add_subcommand(
      "prop31", "Finite mismatch coefficient with infinite concentrability");
  prop31->add_option("--zeta", o.zeta, "Stopping probability");

  auto* prop51 = app.add_subcommand(
      "prop51", "Ratio game violating the Minty condition");
  prop51->add_option("params", o.positional, "EPS S (default 0.1 0.3)");

  auto* fig = app.add_subcommand("fig", "Reproduce a figure: a|b|c|d");
  fig->add_option("figure", o.positional, "a | b | c | d")->required();
  add_output_flags(fig, o);
  fig->add_option("--iters", o.iters, "Extragradient iterations");
  fig->add_option("--log-every", o.log_every, "Logging interval");
  fig->add_option("--eta", o.eta, "Extragradient step size");
  fig->add_option("--res", o.resolution, "Grid resolution");

  auto* train = app.add_subcommand("train", "Two-timescale SGDA");
  add_source_flags(train, o);
  add_output_flags(train, o);
  auto* t_iters = train->add_option("--iters", o.iters, "Iterations");
  train->add_option("--log-every", o.log_every, "Logging interval");
  auto* t_eta_x = train->add_option("--eta-x", o.eta_x, "Min-player step");
  auto* t_eta_y = train->add_option("--eta-y", o.eta_y, "Max-player step");
  auto* t_eps_x = train->add_option("--eps-x", o.eps_x, "Min exploration");
  auto* t_eps_y = train->add_option("--eps-y", o.eps_y, "Max exploration");
  train->add_option("--mode", o.mode, "exact | sampled");
  train->add_option("--rates", o.rates, "theorem1");
  train->add_option("--epsilon", o.epsilon, "Target accuracy for --rates");
  train->add_option("--mismatch", o.mismatch,
                    "C_G for --rates (default: vertex enumeration)");
  train->add_option("--x0", o.x0, "Initial min-player table, row-major");
  train->add_option("--y0", o.y0, "Initial max-player table, row-major");
  train->add_flag("--independent-episodes", o.independent,
                  "Separate episodes for the two players' estimates");

  auto* eg = app.add_subcommand("eg", "Extragradient on exact gradients");
  add_source_flags(eg, o);
  add_output_flags(eg, o);
  auto* e_iters = eg->add_option("--iters", o.iters, "Iterations");
  eg->add_option("--log-every", o.log_every, "Logging interval");
  eg->add_option("--eta", o.eta, "Step size");
  eg->add_option("--eps-x", o.eps_x, "Min exploration (game files)");
  eg->add_option("--eps-y", o.eps_y, "Max exploration (game files)");
  eg->add_option("--mode", o.mode, "exact");
  eg->add_option("--x0", o.x0, "Initial min-player table, row-major");
  eg->add_option("--y0", o.y0, "Initial max-player table, row-major");

  auto* grid = app.add_subcommand("mvi-grid", "Sign grid of the MVI product");
  grid->add_option("--preset", o.preset, "appd1 | appd2");
  grid->add_option("--res", o.resolution, "Grid resolution");
  grid->add_option("--ref", o.ref, "Reference point X1,Y1 (default NE)");
  add_output_flags(grid, o);

  auto* suite = app.add_subcommand("random-suite", "Random game suite");
  add_output_flags(suite, o);
  suite->add_option("--count", o.count, "Number of games");
  suite->add_option("--states", o.states, "States (1 = ratio games)");
  suite->add_option("--actions", o.actions, "Actions per player");
  suite->add_option("--zeta-min", o.zeta_min, "Smallest stopping probability");
  suite->add_option("--iters", o.iters, "Extragradient iterations");
  suite->add_option("--sgda-iters", o.sgda_iters, "SGDA iterations");
  suite->add_option("--eta", o.eta, "Extragradient step size");
  suite->add_option("--eta-x", o.eta_x, "SGDA min-player step");
  suite->add_option("--eta-y", o.eta_y, "SGDA max-player step");
  suite->add_option("--eps-x", o.eps_x, "SGDA min exploration");
  suite->add_option("--eps-y", o.eps_y, "SGDA max exploration");

  std::vector<std::string> argv_store;
  argv_store.push_back("sgrl");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*prop31) return cmd_prop31(o, out);
    if (*prop51) return cmd_prop51(o, out);
    if (*fig) return cmd_fig(o, out);
    if (*train) {
      return cmd_train(o, t_eta_x->count() > 0, t_eta_y->count() > 0,
                       t_eps_x->count() > 0, t_eps_y->count() > 0,
                       t_iters->count() > 0, out, err);
    }
    if (*eg) return cmd_eg(o, e_iters->count() > 0, out);
    if (*grid) return cmd_mvi_grid(o, out);
    if (*suite) return cmd_random_suite(o, out);
  } catch (const InvalidGameError& e) {
    err << "invalid game\n" << format_report(e.report());
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UnsupportedMode& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitInput;
}

}  // namespace sgrl::tools
