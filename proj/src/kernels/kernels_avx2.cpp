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

// AVX2 kernel variants.  This translation unit alone is compiled with
// -mavx2; everything here runs only after a runtime cpuid check, so no
// AVX2 instruction is reachable on older hardware.
//
// The fills reproduce the scalar results bit-for-bit: parity and quarter
// phase only move sign bits and zeros around, and the popcount is computed
// with the nibble-LUT trick (in-register table lookup of per-nibble bit
// counts, then a horizontal byte sum per 64-bit lane).  The geometric fill
// and the dot product reassociate products/sums and agree with the scalar
// reference to rounding only.

#include "variants.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace nopabell::kernels {

namespace {

void geometric_fill_avx2(double* out, std::size_t n, double first,
                         double ratio) {
  if (n < 8) {
    double value = first;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = value;
      value *= ratio;
    }
    return;
  }
  const double r2 = ratio * ratio;
  __m256d value =
      _mm256_set_pd(first * r2 * ratio, first * r2, first * ratio, first);
  const __m256d step = _mm256_set1_pd(r2 * r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, value);
    value = _mm256_mul_pd(value, step);
  }
  double tail = out[i - 1];
  for (; i < n; ++i) {
    tail *= ratio;
    out[i] = tail;
  }
}

// Per-64-bit-lane popcount of v, as 64-bit counts.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i nibble = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, nibble);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), nibble);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                      _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

void parity_sign_fill_avx2(double* out, std::size_t n, std::uint64_t mask) {
  const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);  // +1.0
  __m256i index = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i four = _mm256_set1_epi64x(4);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i counts = popcount_epi64(_mm256_and_si256(index, vmask));
    // Parity bit shifted into the IEEE sign position turns +1.0 into -1.0.
    const __m256i sign = _mm256_slli_epi64(counts, 63);
    _mm256_storeu_pd(out + i,
                     _mm256_castsi256_pd(_mm256_xor_si256(one_bits, sign)));
    index = _mm256_add_epi64(index, four);
  }
  for (; i < n; ++i) {
    out[i] = __builtin_popcountll(i & mask) % 2 == 0 ? 1.0 : -1.0;
  }
}

void quarter_phase_fill_avx2(std::complex<double>* out, const double* signs,
                             std::size_t n) {
  __m256i index = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i four = _mm256_set1_epi64x(4);
  const __m256i three = _mm256_set1_epi64x(3);
  auto* raw = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i quarter = _mm256_and_si256(popcount_epi64(index), three);
    const __m256d s = _mm256_loadu_pd(signs + i);
    // Real part is +s at quarter 0, -s at quarter 2, else 0; the imaginary
    // part shifts the pattern by one quarter.
    const __m256d re =
        _mm256_sub_pd(_mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(
                                        quarter, _mm256_setzero_si256())),
                                    s),
                      _mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(
                                        quarter, _mm256_set1_epi64x(2))),
                                    s));
    const __m256d im =
        _mm256_sub_pd(_mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(
                                        quarter, _mm256_set1_epi64x(1))),
                                    s),
                      _mm256_and_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(
                                        quarter, three)),
                                    s));
    // Interleave lanes into (re, im) pairs: unpack within 128-bit halves,
    // then stitch the halves back in order.
    const __m256d lo = _mm256_unpacklo_pd(re, im);  // re0 im0 re2 im2
    const __m256d hi = _mm256_unpackhi_pd(re, im);  // re1 im1 re3 im3
    _mm256_storeu_pd(raw + 2 * i, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(raw + 2 * i + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    index = _mm256_add_epi64(index, four);
  }
  for (; i < n; ++i) {
    const double s = signs[i];
    switch (__builtin_popcountll(i) % 4) {
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

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  const __m128d half =
      _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double sum = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

constexpr Ops kAvx2 = {
    "avx2",
    geometric_fill_avx2,
    parity_sign_fill_avx2,
    quarter_phase_fill_avx2,
    dot_avx2,
};

}  // namespace

const Ops* avx2_ops() {
  return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

}  // namespace nopabell::kernels

#else  // not x86-64

namespace nopabell::kernels {

const Ops* avx2_ops() { return nullptr; }

}  // namespace nopabell::kernels

#endif
