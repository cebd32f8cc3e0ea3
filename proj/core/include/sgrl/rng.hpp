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

#ifndef SGRL_RNG_HPP_
#define SGRL_RNG_HPP_

#include <cstdint>

#include "sgrl/types.hpp"

namespace sgrl {

// Counter-based random stream. Draw k of stream (seed, stream_id) is a pure
// function of (seed, stream_id, k), so episodes can be sampled in any order
// or on any thread and still reproduce bit for bit. Distributions are
// implemented here rather than via <random> so results do not depend on the
// standard library vendor.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Index drawn from the (possibly sub-stochastic) weights. Returns
  // weights.size() when the draw lands in the missing mass.
  int categorical(const double* weights, int n);
  int categorical(const Vector& weights) {
    return categorical(weights.data(), static_cast<int>(weights.size()));
  }
  // Standard exponential; used for flat Dirichlet draws.
  double exponential();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform point on the probability simplex of the given dimension.
Vector sample_simplex(RngStream& rng, int dim);

// Every row uniform on the simplex.
PolicyTable sample_policy(RngStream& rng, int num_states, int num_actions);

}  // namespace sgrl

#endif  // SGRL_RNG_HPP_
