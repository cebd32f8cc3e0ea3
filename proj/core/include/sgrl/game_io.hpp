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

#ifndef SGRL_GAME_IO_HPP_
#define SGRL_GAME_IO_HPP_

#include <iosfwd>
#include <string>

#include "sgrl/game.hpp"

namespace sgrl {

// Malformed input: unreadable file, invalid JSON, missing keys, wrong types.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed document describing a game that fails validate_game().
class InvalidGameError : public std::runtime_error {
 public:
  explicit InvalidGameError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// JSON document with keys num_states, num_actions_min, num_actions_max,
// transitions [s][a][b][s'], rewards [s][a][b], initial_dist [s].
// Throws ParseError on malformed input and InvalidGameError when the game
// does not validate, unless validate is false.
StochasticGame parse_game_json(const std::string& text, bool validate = true);
StochasticGame load_game_json(const std::string& path, bool validate = true);

std::string game_to_json(const StochasticGame& game);
void save_game_json(const StochasticGame& game, const std::string& path);

std::string format_report(const ValidationReport& report);

}  // namespace sgrl

#endif  // SGRL_GAME_IO_HPP_
