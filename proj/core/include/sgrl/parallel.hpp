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

#ifndef SGRL_PARALLEL_HPP_
#define SGRL_PARALLEL_HPP_

#include <functional>

namespace sgrl {

// requested > 0 wins; otherwise SGRL_THREADS if set, else the hardware
// concurrency. Always >= 1.
int resolve_threads(int requested);

// Calls fn(i) for i in [0, n) on up to `threads` workers. Work items are
// claimed dynamically, so fn must write only to slot i of its output.
// Exceptions from fn are rethrown on the calling thread (first one wins).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace sgrl

#endif  // SGRL_PARALLEL_HPP_
