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
//
// Equivalence tests: every SIMD variant the host can run is checked
// against the scalar reference, on sizes straddling the vector width so
// both the full-lane body and the tail paths are exercised.

#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "nopabell/kernels.hpp"

namespace nopabell::kernels {
namespace {

// Sizes around multiples of the 4-lane AVX2 double width, plus empties
// and odd stragglers.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 257};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  return a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST_CASE("scalar reference semantics") {
  const auto& ops = scalar();
  CHECK(std::string(ops.name) == "scalar");

  std::vector<double> out(6);
  ops.geometric_fill(out.data(), out.size(), 2.0, 0.5);
  CHECK(out == std::vector<double>{2.0, 1.0, 0.5, 0.25, 0.125, 0.0625});

  std::vector<double> signs(8);
  ops.parity_sign_fill(signs.data(), signs.size(), 0b101);
  // popcount(i & 0b101) odd for i in {1, 4}: i=5 has two bits, even.
  CHECK(signs == std::vector<double>{1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0, 1.0});

  std::vector<double> ones(5, 1.0);
  std::vector<std::complex<double>> phases(5);
  ops.quarter_phase_fill(phases.data(), ones.data(), 5);
  using C = std::complex<double>;
  // popcount: 0,1,1,2,1 -> i^0, i^1, i^1, i^2, i^1.
  CHECK(phases == std::vector<C>{C(1, 0), C(0, 1), C(0, 1), C(-1, 0), C(0, 1)});

  std::vector<double> a{1.0, 2.0, 3.0};
  std::vector<double> b{4.0, -5.0, 6.0};
  CHECK(ops.dot(a.data(), b.data(), 3) == 12.0);
  CHECK(ops.dot(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("variant listing always starts with the scalar reference") {
  auto variants = available();
  REQUIRE(!variants.empty());
  CHECK(variants[0] == &scalar());
  CHECK(std::string(active().name).size() > 0);
}

TEST_CASE("integer-valued fills are bit-exact across variants") {
  std::mt19937_64 gen(23);
  for (const Ops* variant : available()) {
    CAPTURE(variant->name);
    for (std::size_t n : kSizes) {
      for (int trial = 0; trial < 4; ++trial) {
        const std::uint64_t mask = gen();
        std::vector<double> want(n), got(n);
        scalar().parity_sign_fill(want.data(), n, mask);
        variant->parity_sign_fill(got.data(), n, mask);
        CHECK(bitwise_equal(want, got));

        std::vector<double> signs(n);
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        for (auto& s : signs) s = coeff(gen);
        std::vector<std::complex<double>> pw(n), pg(n);
        scalar().quarter_phase_fill(pw.data(), signs.data(), n);
        variant->quarter_phase_fill(pg.data(), signs.data(), n);
        bool same = true;
        for (std::size_t i = 0; i < n; ++i) {
          same = same && std::memcmp(&pw[i], &pg[i], sizeof(pw[i])) == 0;
        }
        CHECK(same);
      }
    }
  }
}

TEST_CASE("floating reductions agree with the reference to rounding") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (const Ops* variant : available()) {
    CAPTURE(variant->name);
    for (std::size_t n : kSizes) {
      std::vector<double> a(n), b(n);
      for (auto& x : a) x = coeff(gen);
      for (auto& x : b) x = coeff(gen);
      const double want = scalar().dot(a.data(), b.data(), n);
      const double got = variant->dot(a.data(), b.data(), n);
      CHECK(got == doctest::Approx(want).epsilon(1e-13));

      std::vector<double> gw(n), gg(n);
      scalar().geometric_fill(gw.data(), n, 0.648, 0.7616);
      variant->geometric_fill(gg.data(), n, 0.648, 0.7616);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(gg[i] == doctest::Approx(gw[i]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("parity sign matches std::popcount for large indices") {
  // Use a window of indices beyond 2^32 by filling from an offset view:
  // the kernel indexes from 0, so instead check consistency of the mask
  // semantics on a large mask over a modest range.
  const std::uint64_t mask = 0xffffffffffff0001ull;
  std::vector<double> out(128);
  scalar().parity_sign_fill(out.data(), out.size(), mask);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double want = (std::popcount(i & mask) % 2 == 0) ? 1.0 : -1.0;
    CHECK(out[i] == want);
  }
}

}  // namespace
}  // namespace nopabell::kernels
