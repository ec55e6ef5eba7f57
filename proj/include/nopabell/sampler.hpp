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

// Monte Carlo measurement simulation on the truncated squeezed state.
//
// Joint outcome probabilities are computed exactly (projector expectations
// in Schmidt form), validated to sum to one, and then sampled.  Sampling is
// split into fixed-size batches with per-batch derived seeds, so a run's
// histogram is a pure function of (plan, seed) no matter how many threads
// execute the batches.

#ifndef NOPABELL_SAMPLER_HPP_
#define NOPABELL_SAMPLER_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nopabell/bell.hpp"
#include "nopabell/fock.hpp"

namespace nopabell {

// Joint measurement of the depth-d pseudospin at angle `alpha` on one mode
// and `beta` on the other.
struct SpinMeasurementPlan {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t d = 1;
  double r = 0.0;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
};

struct SpinSampleBatch {
  // counts[i][j]: outcome (+1, +1) at [0][0], sign flips with each index.
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  double empirical_correlation() const;  // mean of the +/-1 product
  // Binomial standard error of empirical_correlation().
  double correlation_std_error() const;
};

SpinSampleBatch sample_joint_spin(const SpinMeasurementPlan& plan,
                                  const TruncatedFockSpace& space);

// Joint measurement of the low `bits` bits of the rotated number operator
// on each mode (angle alpha on one side, beta on the other).
struct NumberMeasurementPlan {
  double alpha = 0.0;
  double beta = 0.0;
  int bits = 1;
  double r = 0.0;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
};

struct NumberSampleBatch {
  // counts[(n << bits) | n']: joint outcome (n, n').
  std::vector<std::uint64_t> counts;
  int bits = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  struct ValueStats {
    double mean = 0.0;
    double std_error = 0.0;
  };
  // Statistics of a per-shot value that depends only on the joint outcome.
  template <typename Value>  // double(unsigned n, unsigned n_prime)
  ValueStats stats(Value&& value) const {
    double sum = 0.0, sum_sq = 0.0;
    const unsigned width = 1u << bits;
    for (unsigned n = 0; n < width; ++n) {
      for (unsigned np = 0; np < width; ++np) {
        const double c = static_cast<double>(counts[(n << bits) | np]);
        if (c == 0.0) continue;
        const double v = value(n, np);
        sum += c * v;
        sum_sq += c * v * v;
      }
    }
    const double total = static_cast<double>(shots);
    ValueStats s;
    s.mean = sum / total;
    const double variance = sum_sq / total - s.mean * s.mean;
    s.std_error = variance > 0.0 ? std::sqrt(variance / total) : 0.0;
    return s;
  }

  ValueStats xor_stats() const;      // value = n XOR n'
  ValueStats hamming_stats() const;  // value = popcount(n XOR n')
  ValueStats weighted_stats(const std::vector<double>& weights) const;
};

NumberSampleBatch sample_joint_number(const NumberMeasurementPlan& plan,
                                      const TruncatedFockSpace& space);

// The exact joint distribution the sampler draws from, indexed like
// NumberSampleBatch::counts.  `sequential_collapse` recomputes it by
// projecting the full bipartite amplitude matrix one bit at a time instead
// of taking Schmidt-form projector expectations; the two routes must agree
// (used as a cross-check at small sizes).
std::vector<double> joint_number_distribution(
    const NumberMeasurementPlan& plan, const TruncatedFockSpace& space,
    bool sequential_collapse = false);

// Empirical Bell estimate: runs the four setting pairs
// (0, gamma), (0, -gamma), (pi/2, gamma), (pi/2, -gamma) with independent
// derived sub-seeds and combines them into the requested functional.
struct BellSamplingPlan {
  BellKind kind = BellKind::Chsh;
  double gamma = 0.0;
  std::size_t d = 1;  // spin grouping (Chsh) or bit count (number kinds)
  int k = 0;          // bit index, BitXor only
  std::vector<double> weights;  // Weighted only
  XorForm form = XorForm::Tight;
  double r = 0.0;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
};

BellReport estimate_bell(const BellSamplingPlan& plan,
                         const TruncatedFockSpace& space);

// Classical control: each side's outcome is sign(cos(theta - lambda)) with
// a shared hidden angle lambda, uniform on [0, 2 pi).  The model's exact
// correlation is the triangle wave 1 - 2 phi / pi with phi the separation
// |alpha - beta| folded into [0, pi]; its CHSH value never exceeds 2.
double lhv_correlation(double alpha, double beta);

// Samples the model at the four CHSH setting pairs (alpha/beta vs
// gamma/delta), each pair with its own derived sub-seed and `shots` draws
// of lambda.
BellReport lhv_estimate(const AngleSet& angles, std::uint64_t shots,
                        std::uint64_t seed);

}  // namespace nopabell

#endif  // NOPABELL_SAMPLER_HPP_
