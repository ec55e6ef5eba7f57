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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nopabell::kernels {

/// Table of the data-parallel inner loops. Every entry has a scalar
/// reference implementation; SIMD variants are selected at runtime and
/// must agree with the reference (bit-exactly for the integer-valued
/// fills, to rounding for the reductions).
struct Ops {
  const char* name;

  /// out[i] = first * ratio^i, as the running product
  /// out[0] = first, out[i] = out[i-1] * ratio.
  void (*geometric_fill)(double* out, std::size_t n, double first,
                         double ratio);

  /// out[i] = -1.0 if popcount(i & mask) is odd, else +1.0.
  void (*parity_sign_fill)(double* out, std::size_t n, std::uint64_t mask);

  /// out[i] = signs[i] * i_unit^(popcount(i) mod 4), i_unit = sqrt(-1).
  /// Exact: results are one of {±s, ±i s} with s = signs[i].
  void (*quarter_phase_fill)(std::complex<double>* out, const double* signs,
                             std::size_t n);

  /// Plain dot product sum_i a[i]*b[i].
  double (*dot)(const double* a, const double* b, std::size_t n);
};

/// Scalar reference kernels. Always available; the semantic ground truth.
const Ops& scalar();

/// Kernels selected for this process: the widest supported SIMD variant,
/// unless the NOPA_BELL_SIMD environment variable ("scalar", "avx2")
/// forces one. Falls back to scalar when a forced variant is unsupported.
const Ops& active();

/// Every variant the current CPU can run, scalar first. Used by the
/// equivalence tests.
std::vector<const Ops*> available();

}  // namespace nopabell::kernels
