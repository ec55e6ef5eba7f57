// Copyright 2026 The nopa-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOPABELL_PARALLEL_HPP_
#define NOPABELL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace nopabell {

// Worker count used by parallel loops: the value of NOPA_BELL_THREADS when
// set to a positive integer, otherwise (unset, "0", or unparseable) the
// hardware concurrency; always at least 1.
unsigned thread_budget();

// Invokes fn(i) for every i in [0, n), distributed over up to
// thread_budget() workers, and waits for completion.  Work items must be
// independent; deterministic results are obtained by having each item write
// only to its own output slot.  Exceptions from items are rethrown (one of
// them) after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nopabell

#endif  // NOPABELL_PARALLEL_HPP_
