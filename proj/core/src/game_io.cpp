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

#include "sgrl/game_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sgrl {
namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return *it;
}

int require_size(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string("'") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

const json& require_array(const json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    throw ParseError(what + " must be an array of length " + std::to_string(n));
  }
  return v;
}

double require_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  return v.get<double>();
}

}  // namespace

InvalidGameError::InvalidGameError(ValidationReport report)
    : std::runtime_error("game failed validation:\n" + format_report(report)),
      report_(std::move(report)) {}

StochasticGame parse_game_json(const std::string& text, bool validate) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("game document must be an object");
  const int S = require_size(doc, "num_states");
  const int A = require_size(doc, "num_actions_min");
  const int B = require_size(doc, "num_actions_max");

  std::vector<double> transitions;
  transitions.reserve(static_cast<std::size_t>(S) * A * B * S);
  std::vector<double> rewards;
  rewards.reserve(static_cast<std::size_t>(S) * A * B);
  const json& P = require_array(require(doc, "transitions"), S, "transitions");
  const json& R = require_array(require(doc, "rewards"), S, "rewards");
  for (int s = 0; s < S; ++s) {
    const std::string ps = "transitions[" + std::to_string(s) + "]";
    const std::string rs = "rewards[" + std::to_string(s) + "]";
    require_array(P[s], A, ps);
    require_array(R[s], A, rs);
    for (int a = 0; a < A; ++a) {
      const std::string pa = ps + "[" + std::to_string(a) + "]";
      const std::string ra = rs + "[" + std::to_string(a) + "]";
      require_array(P[s][a], B, pa);
      require_array(R[s][a], B, ra);
      for (int b = 0; b < B; ++b) {
        const std::string pb = pa + "[" + std::to_string(b) + "]";
        require_array(P[s][a][b], S, pb);
        for (int k = 0; k < S; ++k) {
          transitions.push_back(require_number(P[s][a][b][k], pb));
        }
        rewards.push_back(require_number(R[s][a][b], ra));
      }
    }
  }
  const json& rho_json =
      require_array(require(doc, "initial_dist"), S, "initial_dist");
  Vector rho(S);
  for (int s = 0; s < S; ++s) rho[s] = require_number(rho_json[s], "initial_dist");

  StochasticGame game(S, A, B, std::move(transitions), std::move(rewards),
                      std::move(rho));
  if (validate) {
    ValidationReport report = validate_game(game);
    if (!report.ok) throw InvalidGameError(std::move(report));
  }
  return game;
}

StochasticGame load_game_json(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game_json(buf.str(), validate);
}

std::string game_to_json(const StochasticGame& game) {
  const int S = game.num_states();
  const int A = game.num_actions_min();
  const int B = game.num_actions_max();
  json doc;
  doc["num_states"] = S;
  doc["num_actions_min"] = A;
  doc["num_actions_max"] = B;
  json P = json::array();
  json R = json::array();
  for (int s = 0; s < S; ++s) {
    json ps = json::array();
    json rs = json::array();
    for (int a = 0; a < A; ++a) {
      json pa = json::array();
      json ra = json::array();
      for (int b = 0; b < B; ++b) {
        json row = json::array();
        for (int k = 0; k < S; ++k) row.push_back(game.transition(s, a, b, k));
        pa.push_back(std::move(row));
        ra.push_back(game.reward(s, a, b));
      }
      ps.push_back(std::move(pa));
      rs.push_back(std::move(ra));
    }
    P.push_back(std::move(ps));
    R.push_back(std::move(rs));
  }
  doc["transitions"] = std::move(P);
  doc["rewards"] = std::move(R);
  json rho = json::array();
  for (int s = 0; s < S; ++s) rho.push_back(game.initial_dist()[s]);
  doc["initial_dist"] = std::move(rho);
  return doc.dump(2);
}

void save_game_json(const StochasticGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << game_to_json(game) << '\n';
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream os;
  os << (report.ok ? "ok" : "invalid") << " zeta=" << report.zeta << '\n';
  for (const Violation& v : report.violations) {
    os << "  " << v.description << " at " << v.location << '\n';
  }
  return os.str();
}

}  // namespace sgrl
