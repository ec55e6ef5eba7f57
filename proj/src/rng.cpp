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

#include "nopabell/rng.hpp"

#include <algorithm>

namespace nopabell {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  // Two dependent hops through the sequence starting at `seed`, with the
  // stream index folded in between; a plain (seed + stream) offset would
  // make stream s of seed q collide with stream s+1 of seed q-1.
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ stream;
  mixed = splitmix64(state);
  return mixed;
}

std::size_t Rng::sample_index(const std::vector<double>& cdf) {
  const double u = uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
  // u can exceed the last entry by rounding; clamp to the final outcome.
  return i < cdf.size() ? i : cdf.size() - 1;
}

}  // namespace nopabell
