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

#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "nopabell/correlations.hpp"
#include "nopabell/errors.hpp"
#include "nopabell/fock.hpp"
#include "nopabell/rng.hpp"
#include "nopabell/sampler.hpp"

namespace nopabell {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t total(const SpinSampleBatch& b) {
  return b.counts[0][0] + b.counts[0][1] + b.counts[1][0] + b.counts[1][1];
}

TEST_CASE("spin sampling is a pure function of plan and seed") {
  TruncatedFockSpace space(4);
  SpinMeasurementPlan plan{0.4, 1.0, 1, 1.0, 50000, 99};
  auto a = sample_joint_spin(plan, space);
  auto b = sample_joint_spin(plan, space);
  CHECK(a.counts == b.counts);
  CHECK(total(a) == plan.shots);

  plan.seed = 100;
  auto c = sample_joint_spin(plan, space);
  CHECK(a.counts != c.counts);
}

TEST_CASE("sampling histograms do not depend on the thread count") {
  TruncatedFockSpace space(4);
  // Shots span several 65536-draw batches, so the merge order matters.
  SpinMeasurementPlan plan{0.7, 2.1, 2, 0.9, 300000, 5};

  setenv("NOPA_BELL_THREADS", "1", 1);
  auto serial = sample_joint_spin(plan, space);
  setenv("NOPA_BELL_THREADS", "7", 1);
  auto parallel = sample_joint_spin(plan, space);
  unsetenv("NOPA_BELL_THREADS");
  auto auto_threads = sample_joint_spin(plan, space);

  CHECK(serial.counts == parallel.counts);
  CHECK(serial.counts == auto_threads.counts);
}

TEST_CASE("aligned counting measurements always agree") {
  TruncatedFockSpace space(4);
  SpinMeasurementPlan plan{0.0, 0.0, 1, 1.2, 20000, 3};
  auto batch = sample_joint_spin(plan, space);
  CHECK(batch.counts[0][1] == 0);
  CHECK(batch.counts[1][0] == 0);
  CHECK(batch.empirical_correlation() == 1.0);
  CHECK(batch.correlation_std_error() == 0.0);
}

TEST_CASE("vacuum rotated measurements are unbiased coin flips") {
  TruncatedFockSpace space(4);
  SpinMeasurementPlan plan{kPi / 2, kPi / 2, 1, 0.0, 40000, 11};
  auto batch = sample_joint_spin(plan, space);
  // p = 1/4 per cell; allow 5 binomial sigma = 0.011 around each.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double frac = static_cast<double>(batch.counts[static_cast<std::size_t>(i)]
                                                          [static_cast<std::size_t>(j)]) /
                          static_cast<double>(plan.shots);
      CHECK(std::abs(frac - 0.25) < 0.011);
    }
  }
  CHECK(std::abs(batch.empirical_correlation()) <
        3.0 * batch.correlation_std_error() + 1e-12);
}

TEST_CASE("empirical spin correlation lands within three sigma") {
  auto space = TruncatedFockSpace::for_squeezing(1.0);
  SpinMeasurementPlan plan{0.4, 1.0, 2, 1.0, 200000, 42};
  auto batch = sample_joint_spin(plan, space);
  const double truth =
      numeric_correlation({plan.alpha, plan.beta, plan.d, plan.r}, space).value;
  CHECK(std::abs(batch.empirical_correlation() - truth) <
        3.0 * batch.correlation_std_error());
  // The binomial error at this size is about 2e-3.
  CHECK(batch.correlation_std_error() < 5e-3);
  CHECK(batch.correlation_std_error() > 1e-4);
}

TEST_CASE("spin sampling validation") {
  TruncatedFockSpace space(4);
  CHECK_THROWS_AS(sample_joint_spin({0.0, 0.0, 1, 1.0, 0, 0}, space),
                  InvalidParameter);
  CHECK_THROWS_AS(sample_joint_spin({std::nan(""), 0.0, 1, 1.0, 10, 0}, space),
                  InvalidParameter);
  CHECK_THROWS_AS(sample_joint_spin({0.0, 0.0, 3, 1.0, 10, 0}, space),
                  TruncationIncompatible);
}

TEST_CASE("joint digit histogram: counting basis is diagonal") {
  TruncatedFockSpace space(4);
  NumberMeasurementPlan plan{0.0, 0.0, 2, 1.0, 30000, 17};
  auto batch = sample_joint_number(plan, space);
  REQUIRE(batch.counts.size() == 16);
  std::uint64_t sum = 0;
  for (unsigned n = 0; n < 4; ++n) {
    for (unsigned np = 0; np < 4; ++np) {
      sum += batch.counts[(n << 2) | np];
      if (n != np) CHECK(batch.counts[(n << 2) | np] == 0);
    }
  }
  CHECK(sum == plan.shots);
  CHECK(batch.xor_stats().mean == 0.0);
  CHECK(batch.hamming_stats().mean == 0.0);
  CHECK(batch.weighted_stats({1.0, 2.0}).mean == 0.0);
}

TEST_CASE("per-shot statistics match a hand count") {
  NumberSampleBatch batch;
  batch.bits = 1;
  batch.shots = 4;
  batch.counts = {1, 2, 0, 1};  // (0,0) x1, (0,1) x2, (1,1) x1
  auto xs = batch.xor_stats();
  CHECK(xs.mean == 0.5);  // two mismatches out of four
  // variance = E[x^2] - mean^2 = 0.5 - 0.25; se = sqrt(0.25/4) = 0.25.
  CHECK(xs.std_error == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(batch.hamming_stats().mean == 0.5);
  CHECK(batch.weighted_stats({3.0}).mean == 1.5);
  CHECK_THROWS_AS(batch.weighted_stats({1.0, 1.0}), InvalidParameter);
}

TEST_CASE("exact joint digit distribution; collapse route agrees") {
  TruncatedFockSpace space(4);  // M = 16
  for (double alpha : {0.0, 0.7, kPi / 2}) {
    for (int bits : {1, 2, 3}) {
      NumberMeasurementPlan plan{alpha, 1.9, bits, 0.8, 1, 0};
      auto fast = joint_number_distribution(plan, space);
      auto slow = joint_number_distribution(plan, space, true);
      REQUIRE(fast.size() == slow.size());
      REQUIRE(fast.size() == (std::size_t{1} << (2 * bits)));
      CHECK(std::abs(std::accumulate(fast.begin(), fast.end(), 0.0) - 1.0) < 1e-12);
      for (std::size_t i = 0; i < fast.size(); ++i) {
        CAPTURE(alpha);
        CAPTURE(bits);
        CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("rotated joint digits factorize over independent digit pairs") {
  // For the renormalized truncated state at M = 2^D, the rotated-digit
  // outcome pair (m, m') has distribution
  //   prod_k (1 + (-1)^(m_k xor m'_k) K_(2^k)) / 4,
  // an independent product over digit positions. This closed form never
  // touches the sparse-projector machinery, so it cross-checks it.
  TruncatedFockSpace space(4);  // M = 16
  const double r = 1.1;
  const int bits = 3;
  NumberMeasurementPlan plan{kPi / 2, kPi / 2, bits, r, 1, 0};
  auto dist = joint_number_distribution(plan, space);
  for (unsigned m = 0; m < 8; ++m) {
    for (unsigned mp = 0; mp < 8; ++mp) {
      double want = 1.0;
      for (int k = 0; k < bits; ++k) {
        const double Kk = squeeze_Kd(r, std::size_t{1} << k);
        const double sign = ((m ^ mp) >> k) & 1u ? -1.0 : 1.0;
        want *= (1.0 + sign * Kk) / 4.0;
      }
      CAPTURE(m);
      CAPTURE(mp);
      CHECK(dist[(m << bits) | mp] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("digit sampling validation") {
  TruncatedFockSpace space(3);  // M = 8
  CHECK_THROWS_AS(sample_joint_number({0.0, 0.0, 0, 1.0, 10, 0}, space),
                  InvalidParameter);
  CHECK_THROWS_AS(sample_joint_number({0.0, 0.0, 4, 1.0, 10, 0}, space),
                  DepthExceeded);
  CHECK_NOTHROW(sample_joint_number({0.0, 0.0, 3, 1.0, 10, 0}, space));
}

TEST_CASE("empirical pair-functional estimates match the closed form") {
  auto space = TruncatedFockSpace::for_squeezing(1.0);
  const double r = 1.0;

  BellSamplingPlan plan;
  plan.r = r;
  plan.shots = 100000;
  plan.seed = 7;

  SUBCASE("four-correlation form at its optimum") {
    plan.kind = BellKind::Chsh;
    plan.gamma = optimal_gamma(1, r).gamma_star;
    auto rep = estimate_bell(plan, space);
    REQUIRE(rep.standard_error.has_value());
    const double expected = chsh_lhs(1, r)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 2.0);
    CHECK(rep.violation > 0.5);
    CHECK(rep.warning.empty());
  }

  SUBCASE("single-digit mismatch form") {
    plan.kind = BellKind::BitXor;
    plan.k = 1;
    plan.gamma = bit_lhs(1, r).optimum().gamma_star;
    auto rep = estimate_bell(plan, space);
    const double expected = bit_lhs(1, r)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 1.0);
    CHECK(rep.violation > 0.0);
  }

  SUBCASE("multi-digit counting form") {
    plan.kind = BellKind::NumberXor;
    plan.d = 2;
    plan.gamma = number_lhs(2, r).optimum().gamma_star;
    auto rep = estimate_bell(plan, space);
    const double expected = number_lhs(2, r)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 3.0);
    CHECK(rep.violation > 0.0);
  }

  SUBCASE("mismatch-count form") {
    plan.kind = BellKind::Hamming;
    plan.d = 2;
    plan.gamma = hamming_lhs(2, r).optimum().gamma_star;
    auto rep = estimate_bell(plan, space);
    const double expected = hamming_lhs(2, r)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 2.0);
  }

  SUBCASE("weighted form") {
    plan.kind = BellKind::Weighted;
    plan.weights = {1.0, 3.0};
    plan.gamma = weighted_lhs(plan.weights, r).optimum().gamma_star;
    auto rep = estimate_bell(plan, space);
    const double expected = weighted_lhs(plan.weights, r)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 4.0);
  }

  SUBCASE("corollary scoring") {
    plan.kind = BellKind::BitXor;
    plan.k = 0;
    plan.form = XorForm::Corollary;
    plan.gamma = bit_lhs(0, r, XorForm::Corollary).optimum().gamma_star;
    auto rep = estimate_bell(plan, space);
    const double expected = bit_lhs(0, r, XorForm::Corollary)(plan.gamma);
    CHECK(std::abs(rep.lhs - expected) < 3.0 * *rep.standard_error);
    CHECK(rep.classical_bound == 2.0);
  }
}

TEST_CASE("tiny estimates carry a reliability warning") {
  auto space = TruncatedFockSpace::for_squeezing(0.5);
  BellSamplingPlan plan;
  plan.gamma = 0.5;
  plan.r = 0.5;
  plan.shots = 50;
  plan.seed = 1;
  auto rep = estimate_bell(plan, space);
  CHECK_FALSE(rep.warning.empty());
}

TEST_CASE("estimate determinism and seed separation") {
  auto space = TruncatedFockSpace::for_squeezing(1.0);
  BellSamplingPlan plan;
  plan.gamma = 0.767;
  plan.r = 1.0;
  plan.shots = 20000;
  plan.seed = 123;
  auto a = estimate_bell(plan, space);
  auto b = estimate_bell(plan, space);
  CHECK(a.lhs == b.lhs);
  CHECK(*a.standard_error == *b.standard_error);
  plan.seed = 124;
  auto c = estimate_bell(plan, space);
  CHECK(a.lhs != c.lhs);
}

TEST_CASE("hidden-angle model: exact correlation is the triangle wave") {
  CHECK(lhv_correlation(0.0, 0.0) == 1.0);
  CHECK(lhv_correlation(0.3, 0.3 + kPi) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(lhv_correlation(0.0, kPi / 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lhv_correlation(0.0, kPi / 4) == doctest::Approx(0.5).epsilon(1e-14));
  // Separation folds into [0, pi]: 3 pi / 2 apart acts like pi / 2.
  CHECK(lhv_correlation(0.0, 3 * kPi / 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lhv_correlation(1.0, 0.2) ==
        doctest::Approx(lhv_correlation(0.2, 1.0)).epsilon(1e-15));
}

TEST_CASE("hidden-angle model saturates but never beats the bound") {
  // The classical optimum (0, pi/2, pi/4, -pi/4) reaches exactly 2.
  const AngleSet best{0.0, kPi / 2, kPi / 4, -kPi / 4};
  const double exact =
      std::abs(lhv_correlation(best.alpha, best.gamma) +
               lhv_correlation(best.alpha, best.delta)) +
      std::abs(lhv_correlation(best.beta, best.gamma) -
               lhv_correlation(best.beta, best.delta));
  CHECK(exact == doctest::Approx(2.0).epsilon(1e-14));

  auto rep = lhv_estimate(best, 200000, 31);
  REQUIRE(rep.standard_error.has_value());
  CHECK(std::abs(rep.lhs - 2.0) < 3.0 * *rep.standard_error);

  // Random setting quadruples: empirical value never clears the bound by
  // more than statistical noise. The two absolute values fold the noise
  // upward by up to sigma * sqrt(2/pi) each when an inner sum sits near
  // zero, so the band is 4 sigma rather than 3.
  Rng gen(101);
  for (int trial = 0; trial < 25; ++trial) {
    AngleSet angles{gen.uniform() * 2 * kPi, gen.uniform() * 2 * kPi,
                    gen.uniform() * 2 * kPi, gen.uniform() * 2 * kPi};
    auto sampled = lhv_estimate(angles, 20000, 1000 + static_cast<std::uint64_t>(trial));
    CHECK(sampled.lhs <= 2.0 + 4.0 * *sampled.standard_error);

    // And the empirical value tracks the model's exact prediction.
    const double want =
        std::abs(lhv_correlation(angles.alpha, angles.gamma) +
                 lhv_correlation(angles.alpha, angles.delta)) +
        std::abs(lhv_correlation(angles.beta, angles.gamma) -
                 lhv_correlation(angles.beta, angles.delta));
    CHECK(std::abs(sampled.lhs - want) < 5.0 * *sampled.standard_error + 1e-3);
  }
}

TEST_CASE("hidden-angle estimates are deterministic and thread independent") {
  const AngleSet angles{0.1, 1.7, 0.9, -0.4};
  setenv("NOPA_BELL_THREADS", "1", 1);
  auto serial = lhv_estimate(angles, 150000, 77);
  setenv("NOPA_BELL_THREADS", "5", 1);
  auto parallel = lhv_estimate(angles, 150000, 77);
  unsetenv("NOPA_BELL_THREADS");
  CHECK(serial.lhs == parallel.lhs);
  CHECK(*serial.standard_error == *parallel.standard_error);
}

TEST_CASE("standard error shrinks like the square root of the sample size") {
  auto space = TruncatedFockSpace::for_squeezing(1.0);
  BellSamplingPlan plan;
  plan.gamma = 0.767;
  plan.r = 1.0;
  plan.seed = 57;
  plan.shots = 10000;
  auto small = estimate_bell(plan, space);
  plan.shots = 1000000;
  auto large = estimate_bell(plan, space);
  const double ratio = *small.standard_error / *large.standard_error;
  CHECK(ratio > 5.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("stream derivation separates seeds and streams") {
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(2, 0));
  // The two-stage mix must not collapse (seed, stream) pairs with equal sums.
  CHECK(derive_stream_seed(1, 1) != derive_stream_seed(2, 0));
  CHECK(derive_stream_seed(0, 2) != derive_stream_seed(2, 0));
}

}  // namespace
}  // namespace nopabell
