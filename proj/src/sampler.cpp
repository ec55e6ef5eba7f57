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

#include "nopabell/sampler.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <string>
#include <utility>

#include "nopabell/number_bits.hpp"
#include "nopabell/parallel.hpp"
#include "nopabell/pseudospin.hpp"
#include "nopabell/rng.hpp"

namespace nopabell {

namespace {

// Shots are consumed in fixed-size batches, one derived seed per batch, so
// the merged histogram depends only on (plan, seed) and never on how many
// threads happened to run.
constexpr std::uint64_t kBatchShots = std::uint64_t{1} << 16;

void check_shots(std::uint64_t shots) {
  if (shots == 0) throw InvalidParameter("shots must be >= 1");
}

void check_angle(double angle) {
  if (!std::isfinite(angle)) {
    throw InvalidParameter("measurement angle must be finite");
  }
}

// Validates raw projector expectations as a probability vector: clamps
// rounding-level negatives to zero and checks completeness.
void validate_probabilities(std::vector<double>& p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 0.0) {
      if (v < -1e-12) {
        throw InternalConsistency(
            "joint outcome probability " + std::to_string(v) +
            " is negative beyond rounding tolerance");
      }
      v = 0.0;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InternalConsistency("joint outcome probabilities sum to " +
                              std::to_string(sum) + ", not 1");
  }
  for (double& v : p) v /= sum;
}

// Draws `shots` outcomes from the distribution `p` (already validated) and
// returns per-outcome counts; deterministic in (p, seed).
std::vector<std::uint64_t> sample_counts(const std::vector<double>& p,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }

  const std::size_t batches =
      static_cast<std::size_t>((shots + kBatchShots - 1) / kBatchShots);
  std::vector<std::vector<std::uint64_t>> partial(batches);
  parallel_for(batches, [&](std::size_t b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBatchShots;
    const std::uint64_t count = std::min(kBatchShots, shots - lo);
    Rng rng(derive_stream_seed(seed, b));
    std::vector<std::uint64_t> local(p.size(), 0);
    for (std::uint64_t s = 0; s < count; ++s) ++local[rng.sample_index(cdf)];
    partial[b] = std::move(local);
  });

  std::vector<std::uint64_t> total(p.size(), 0);
  for (const auto& local : partial) {
    for (std::size_t i = 0; i < p.size(); ++i) total[i] += local[i];
  }
  return total;
}

}  // namespace

double SpinSampleBatch::empirical_correlation() const {
  double sum = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sign = a == b ? 1.0 : -1.0;
      sum += sign * static_cast<double>(counts[a][b]);
    }
  }
  return sum / static_cast<double>(shots);
}

double SpinSampleBatch::correlation_std_error() const {
  const double e = empirical_correlation();
  const double variance = std::max(0.0, 1.0 - e * e);
  return std::sqrt(variance / static_cast<double>(shots));
}

SpinSampleBatch sample_joint_spin(const SpinMeasurementPlan& plan,
                                  const TruncatedFockSpace& space) {
  check_shots(plan.shots);
  check_angle(plan.alpha);
  check_angle(plan.beta);

  const SchmidtState state = nopa_coefficients(plan.r, space);
  const SparseOperator id = SparseOperator::identity(space.dim());
  const SparseOperator sa =
      build_spin(SpinAxis::theta(plan.alpha), plan.d, space);
  const SparseOperator sb =
      build_spin(SpinAxis::theta(plan.beta), plan.d, space);
  const complex half{0.5, 0.0};
  const SparseOperator pa[2] = {(id + sa).scaled(half), (id - sa).scaled(half)};
  const SparseOperator qb[2] = {(id + sb).scaled(half), (id - sb).scaled(half)};

  std::vector<double> p(4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      p[2 * a + b] = schmidt_expectation(state, pa[a], qb[b]).real();
    }
  }
  validate_probabilities(p);

  const std::vector<std::uint64_t> counts =
      sample_counts(p, plan.shots, plan.seed);
  SpinSampleBatch batch;
  batch.shots = plan.shots;
  batch.seed = plan.seed;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) batch.counts[a][b] = counts[2 * a + b];
  }
  return batch;
}

NumberSampleBatch::ValueStats NumberSampleBatch::xor_stats() const {
  return stats([](unsigned n, unsigned np) {
    return static_cast<double>(n ^ np);
  });
}

NumberSampleBatch::ValueStats NumberSampleBatch::hamming_stats() const {
  return stats([](unsigned n, unsigned np) {
    return static_cast<double>(std::popcount(n ^ np));
  });
}

NumberSampleBatch::ValueStats NumberSampleBatch::weighted_stats(
    const std::vector<double>& weights) const {
  if (weights.size() != static_cast<std::size_t>(bits)) {
    throw InvalidParameter("need exactly one weight per sampled bit");
  }
  return stats([&weights](unsigned n, unsigned np) {
    double v = 0.0;
    unsigned x = n ^ np;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if ((x >> k) & 1u) v += weights[k];
    }
    return v;
  });
}

namespace {

// (I + (1-2v) s_{theta,2^k})/2 for v in {0, 1}: the projector onto bit
// value v of the rotated number measurement.
std::vector<std::array<SparseOperator, 2>> bit_projectors(
    double angle, int bits, const TruncatedFockSpace& space) {
  const SparseOperator id = SparseOperator::identity(space.dim());
  const complex half{0.5, 0.0};
  std::vector<std::array<SparseOperator, 2>> per_bit;
  per_bit.reserve(static_cast<std::size_t>(bits));
  for (int k = 0; k < bits; ++k) {
    const SparseOperator s =
        build_spin(SpinAxis::theta(angle), std::size_t{1} << k, space);
    per_bit.push_back({(id + s).scaled(half), (id - s).scaled(half)});
  }
  return per_bit;
}

// Products P_n = prod_k proj[k][bit_k(n)] for every n < 2^bits, built level
// by level so each product is formed once.
std::vector<SparseOperator> outcome_projectors(
    const std::vector<std::array<SparseOperator, 2>>& per_bit) {
  std::vector<SparseOperator> prods;
  prods.push_back(SparseOperator::identity(per_bit[0][0].dim()));
  for (std::size_t k = 0; k < per_bit.size(); ++k) {
    std::vector<SparseOperator> next;
    next.reserve(prods.size() * 2);
    // Index grows low bit first: next[n | (v << k)] = prods[n] * proj.
    for (int v = 0; v < 2; ++v) {
      for (const SparseOperator& prefix : prods) {
        next.push_back(prefix * per_bit[k][v]);
      }
    }
    prods = std::move(next);
  }
  return prods;
}

void check_bits(const NumberMeasurementPlan& plan,
                const TruncatedFockSpace& space) {
  if (plan.bits < 1) throw InvalidParameter("bit count must be >= 1");
  if (plan.bits > 10) {
    throw DepthExceeded(
        "joint number sampling is limited to 10 bits per side");
  }
  if ((std::size_t{1} << plan.bits) > space.dim()) {
    throw DepthExceeded("bit count " + std::to_string(plan.bits) +
                        " needs dimension >= 2^" + std::to_string(plan.bits) +
                        ", have " + std::to_string(space.dim()));
  }
}

std::vector<double> number_distribution_table(
    const NumberMeasurementPlan& plan, const TruncatedFockSpace& space) {
  const SchmidtState state = nopa_coefficients(plan.r, space);
  const std::vector<SparseOperator> pa =
      outcome_projectors(bit_projectors(plan.alpha, plan.bits, space));
  const std::vector<SparseOperator> qb =
      outcome_projectors(bit_projectors(plan.beta, plan.bits, space));
  const unsigned width = 1u << plan.bits;
  std::vector<double> p(static_cast<std::size_t>(width) * width);
  parallel_for(width, [&](std::size_t n) {
    for (unsigned np = 0; np < width; ++np) {
      p[(n << plan.bits) | np] =
          schmidt_expectation(state, pa[n], qb[np]).real();
    }
  });
  validate_probabilities(p);
  return p;
}

// --- dense bipartite-amplitude route -------------------------------------
//
// The state of the two modes is held as the full amplitude matrix
// psi[m][n] = <m, n | psi> (diagonal c_n at the start).  A projector on the
// first mode multiplies from the left; one on the second mode contracts the
// column index.  This is the straightforward-but-quadratic realization of
// the measurement, kept as an independent route for cross-checking the
// Schmidt-form tables and as the fallback when the table would be too big.

using DenseMatrix = std::vector<complex>;  // row-major, dim x dim

DenseMatrix initial_amplitudes(const SchmidtState& state) {
  const std::size_t m = state.dim();
  DenseMatrix psi(m * m, complex{0.0, 0.0});
  for (std::size_t n = 0; n < m; ++n) {
    psi[n * m + n] = complex{state.coefficients[n], 0.0};
  }
  return psi;
}

DenseMatrix left_mult(const SparseOperator& op, const DenseMatrix& psi,
                      std::size_t dim) {
  DenseMatrix out(dim * dim, complex{0.0, 0.0});
  for (const auto& e : op.entries()) {
    const complex v = e.value;
    const complex* src = &psi[static_cast<std::size_t>(e.col) * dim];
    complex* dst = &out[static_cast<std::size_t>(e.row) * dim];
    for (std::size_t n = 0; n < dim; ++n) dst[n] += v * src[n];
  }
  return out;
}

DenseMatrix right_mult(const DenseMatrix& psi, const SparseOperator& op,
                       std::size_t dim) {
  // (1 (x) op) psi as a matrix: out[m][row] += op[row][col] psi[m][col].
  DenseMatrix out(dim * dim, complex{0.0, 0.0});
  for (const auto& e : op.entries()) {
    const complex v = e.value;
    for (std::size_t m = 0; m < dim; ++m) {
      out[m * dim + e.row] += v * psi[m * dim + e.col];
    }
  }
  return out;
}

double frobenius_sq(const DenseMatrix& psi) {
  double sum = 0.0;
  for (const complex& v : psi) sum += std::norm(v);
  return sum;
}

void collapse_distribution(
    const std::vector<std::array<SparseOperator, 2>>& pa,
    const std::vector<std::array<SparseOperator, 2>>& qb, std::size_t dim,
    int bits, int k, unsigned n, unsigned np, const DenseMatrix& psi,
    std::vector<double>& out) {
  if (k == bits) {
    out[(static_cast<std::size_t>(n) << bits) | np] = frobenius_sq(psi);
    return;
  }
  for (unsigned v = 0; v < 2; ++v) {
    const DenseMatrix left = left_mult(pa[k][v], psi, dim);
    for (unsigned vp = 0; vp < 2; ++vp) {
      const DenseMatrix both = right_mult(left, qb[k][vp], dim);
      collapse_distribution(pa, qb, dim, bits, k + 1, n | (v << k),
                            np | (vp << k), both, out);
    }
  }
}

std::vector<double> number_distribution_collapse(
    const NumberMeasurementPlan& plan, const TruncatedFockSpace& space) {
  const SchmidtState state = nopa_coefficients(plan.r, space);
  const auto pa = bit_projectors(plan.alpha, plan.bits, space);
  const auto qb = bit_projectors(plan.beta, plan.bits, space);
  const unsigned width = 1u << plan.bits;
  std::vector<double> p(static_cast<std::size_t>(width) * width, 0.0);
  collapse_distribution(pa, qb, space.dim(), plan.bits, 0, 0, 0,
                        initial_amplitudes(state), p);
  validate_probabilities(p);
  return p;
}

}  // namespace

std::vector<double> joint_number_distribution(
    const NumberMeasurementPlan& plan, const TruncatedFockSpace& space,
    bool sequential_collapse) {
  check_bits(plan, space);
  check_angle(plan.alpha);
  check_angle(plan.beta);
  return sequential_collapse ? number_distribution_collapse(plan, space)
                             : number_distribution_table(plan, space);
}

NumberSampleBatch sample_joint_number(const NumberMeasurementPlan& plan,
                                      const TruncatedFockSpace& space) {
  check_shots(plan.shots);
  // The exact outcome table has 2^(2 bits) entries; beyond 2^16 of them we
  // fall back to the collapse route, which trades table size for per-call
  // dense matrix work.
  const bool use_table = 2 * plan.bits <= 16;
  const std::vector<double> p =
      joint_number_distribution(plan, space, !use_table);

  NumberSampleBatch batch;
  batch.bits = plan.bits;
  batch.shots = plan.shots;
  batch.seed = plan.seed;
  batch.counts = sample_counts(p, plan.shots, plan.seed);
  return batch;
}

namespace {

struct TermEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

double combine_std_error(const TermEstimate (&terms)[4]) {
  double sq = 0.0;
  for (const TermEstimate& t : terms) sq += t.std_error * t.std_error;
  return std::sqrt(sq);
}

}  // namespace

BellReport estimate_bell(const BellSamplingPlan& plan,
                         const TruncatedFockSpace& space) {
  check_shots(plan.shots);
  check_angle(plan.gamma);
  if (plan.kind == BellKind::Weighted) {
    if (plan.weights.empty()) {
      throw InvalidParameter("weighted estimate needs at least one weight");
    }
    double sum = 0.0;
    for (double w : plan.weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw InvalidParameter("bit weights must be finite and >= 0");
      }
      sum += w;
    }
    if (sum == 0.0) {
      throw InvalidParameter("bit weights must not all be zero");
    }
  }
  const double pi_half = std::numbers::pi / 2.0;
  const double setting_a[4] = {0.0, 0.0, pi_half, pi_half};
  const double setting_b[4] = {plan.gamma, -plan.gamma, plan.gamma,
                               -plan.gamma};

  const bool spin_based =
      plan.kind == BellKind::Chsh || plan.kind == BellKind::BitXor;

  TermEstimate terms[4];
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t sub_seed =
        derive_stream_seed(plan.seed, static_cast<std::uint64_t>(i));
    if (spin_based) {
      SpinMeasurementPlan sub;
      sub.alpha = setting_a[i];
      sub.beta = setting_b[i];
      sub.d = plan.kind == BellKind::Chsh ? plan.d : std::size_t{1} << plan.k;
      sub.r = plan.r;
      sub.shots = plan.shots;
      sub.seed = sub_seed;
      const SpinSampleBatch batch = sample_joint_spin(sub, space);
      terms[i].value = batch.empirical_correlation();
      terms[i].std_error = batch.correlation_std_error();
      if (plan.kind == BellKind::BitXor) {
        // E(B xor B') = (1 - E(SS'))/2.
        terms[i].value = 0.5 * (1.0 - terms[i].value);
        terms[i].std_error *= 0.5;
      }
    } else {
      NumberMeasurementPlan sub;
      sub.alpha = setting_a[i];
      sub.beta = setting_b[i];
      sub.bits = plan.kind == BellKind::Weighted
                     ? static_cast<int>(plan.weights.size())
                     : static_cast<int>(plan.d);
      sub.r = plan.r;
      sub.shots = plan.shots;
      sub.seed = sub_seed;
      const NumberSampleBatch batch = sample_joint_number(sub, space);
      NumberSampleBatch::ValueStats stats;
      switch (plan.kind) {
        case BellKind::NumberXor:
          stats = batch.xor_stats();
          break;
        case BellKind::Hamming:
          stats = batch.hamming_stats();
          break;
        default:
          stats = batch.weighted_stats(plan.weights);
          break;
      }
      terms[i].value = stats.mean;
      terms[i].std_error = stats.std_error;
    }
  }

  double tight_bound = 0.0;
  switch (plan.kind) {
    case BellKind::Chsh:
      tight_bound = 2.0;
      break;
    case BellKind::BitXor:
      tight_bound = 1.0;
      break;
    case BellKind::NumberXor:
      tight_bound = std::ldexp(1.0, static_cast<int>(plan.d)) - 1.0;
      break;
    case BellKind::Hamming:
      tight_bound = static_cast<double>(plan.d);
      break;
    case BellKind::Weighted: {
      double sum = 0.0;
      for (double w : plan.weights) sum += w;
      tight_bound = sum;
      break;
    }
  }

  BellReport report;
  report.kind = plan.kind;
  if (plan.kind == BellKind::Chsh) {
    report.lhs = std::abs(terms[0].value + terms[1].value) +
                 std::abs(terms[2].value - terms[3].value);
    report.classical_bound = 2.0;
  } else if (plan.form == XorForm::Tight) {
    report.lhs = std::abs(terms[0].value + terms[1].value - tight_bound) +
                 std::abs(terms[2].value - terms[3].value);
    report.classical_bound = tight_bound;
  } else {
    report.lhs = std::abs(terms[0].value + terms[1].value) +
                 std::abs(terms[2].value - terms[3].value);
    report.classical_bound = 2.0 * tight_bound;
  }
  report.violation = report.lhs - report.classical_bound;
  report.standard_error = combine_std_error(terms);
  if (plan.shots < 100) {
    report.warning =
        "fewer than 100 shots per term; the standard error estimate is "
        "unreliable";
  }
  return report;
}

double lhv_correlation(double alpha, double beta) {
  check_angle(alpha);
  check_angle(beta);
  const double two_pi = 2.0 * std::numbers::pi;
  double phi = std::fmod(std::abs(alpha - beta), two_pi);
  if (phi > std::numbers::pi) phi = two_pi - phi;
  return 1.0 - 2.0 * phi / std::numbers::pi;
}

BellReport lhv_estimate(const AngleSet& angles, std::uint64_t shots,
                        std::uint64_t seed) {
  check_shots(shots);
  const double setting_1[4] = {angles.alpha, angles.alpha, angles.beta,
                               angles.beta};
  const double setting_2[4] = {angles.gamma, angles.delta, angles.gamma,
                               angles.delta};

  TermEstimate terms[4];
  for (int i = 0; i < 4; ++i) {
    check_angle(setting_1[i]);
    check_angle(setting_2[i]);
    const std::uint64_t pair_seed =
        derive_stream_seed(seed, static_cast<std::uint64_t>(i));
    const std::size_t batches =
        static_cast<std::size_t>((shots + kBatchShots - 1) / kBatchShots);
    std::vector<std::uint64_t> agree(batches, 0);
    parallel_for(batches, [&](std::size_t b) {
      const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBatchShots;
      const std::uint64_t count = std::min(kBatchShots, shots - lo);
      Rng rng(derive_stream_seed(pair_seed, b));
      std::uint64_t local = 0;
      for (std::uint64_t s = 0; s < count; ++s) {
        const double lambda = 2.0 * std::numbers::pi * rng.uniform();
        const bool up_1 = std::cos(setting_1[i] - lambda) >= 0.0;
        const bool up_2 = std::cos(setting_2[i] - lambda) >= 0.0;
        if (up_1 == up_2) ++local;
      }
      agree[b] = local;
    });
    std::uint64_t total = 0;
    for (std::uint64_t a : agree) total += a;
    const double e =
        (2.0 * static_cast<double>(total) - static_cast<double>(shots)) /
        static_cast<double>(shots);
    terms[i].value = e;
    terms[i].std_error =
        std::sqrt(std::max(0.0, 1.0 - e * e) / static_cast<double>(shots));
  }

  BellReport report;
  report.kind = BellKind::Chsh;
  report.lhs = std::abs(terms[0].value + terms[1].value) +
               std::abs(terms[2].value - terms[3].value);
  report.classical_bound = 2.0;
  report.violation = report.lhs - report.classical_bound;
  report.standard_error = combine_std_error(terms);
  return report;
}

}  // namespace nopabell
