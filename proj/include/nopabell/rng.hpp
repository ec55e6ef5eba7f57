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

// Seeded random streams with documented splitting.
//
// Every Monte Carlo routine in this library derives one independent stream
// per (seed, stream index) pair through a splitmix64 hop, then draws from a
// mt19937_64 seeded with the derived value.  Uniform doubles are produced
// by the explicit 53-bit construction rather than a distribution object, so
// the sampled values are identical across standard-library implementations
// and the merged statistics are reproducible bit-for-bit regardless of how
// many worker threads consumed the streams.

#ifndef NOPABELL_RNG_HPP_
#define NOPABELL_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace nopabell {

// One step of the splitmix64 sequence; advances `state` and returns the
// mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives the seed for sub-stream `stream` of a run seeded with `seed`.
// Distinct (seed, stream) pairs give decorrelated generator states.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with the full 53 bits of double significand.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Draws an index from the distribution whose inclusive prefix sums are
  // `cdf` (last entry ~1); ties broken toward the smaller index.
  std::size_t sample_index(const std::vector<double>& cdf);

 private:
  std::mt19937_64 gen_;
};

}  // namespace nopabell

#endif  // NOPABELL_RNG_HPP_
