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

// Scalar reference kernels and the runtime variant dispatch.  This file is
// compiled without any SIMD flags; vector variants live in their own
// translation units so their instructions never leak into code that runs on
// unverified hardware.

#include "nopabell/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

#include "variants.hpp"

namespace nopabell::kernels {

namespace {

void geometric_fill_scalar(double* out, std::size_t n, double first,
                           double ratio) {
  double value = first;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = value;
    value *= ratio;
  }
}

void parity_sign_fill_scalar(double* out, std::size_t n, std::uint64_t mask) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::popcount(i & mask) % 2 == 0 ? 1.0 : -1.0;
  }
}

void quarter_phase_fill_scalar(std::complex<double>* out, const double* signs,
                               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = signs[i];
    switch (std::popcount(i) % 4) {
      case 0:
        out[i] = {s, 0.0};
        break;
      case 1:
        out[i] = {0.0, s};
        break;
      case 2:
        out[i] = {-s, 0.0};
        break;
      default:
        out[i] = {0.0, -s};
        break;
    }
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

constexpr Ops kScalar = {
    "scalar",
    geometric_fill_scalar,
    parity_sign_fill_scalar,
    quarter_phase_fill_scalar,
    dot_scalar,
};

const Ops* pick_active() {
  const Ops* widest = avx2_ops();  // null off x86-64 or without AVX2
  if (const char* forced = std::getenv("NOPA_BELL_SIMD")) {
    if (std::strcmp(forced, "scalar") == 0) return &kScalar;
    if (std::strcmp(forced, "avx2") == 0 && widest != nullptr) return widest;
    // Unknown or unsupported request: fall through to the default choice.
  }
  return widest != nullptr ? widest : &kScalar;
}

}  // namespace

const Ops& scalar() { return kScalar; }

const Ops& active() {
  static const Ops* chosen = pick_active();
  return *chosen;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> list{&kScalar};
  if (const Ops* v = avx2_ops()) list.push_back(v);
  return list;
}

}  // namespace nopabell::kernels
