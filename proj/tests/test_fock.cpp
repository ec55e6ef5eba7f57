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

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "nopabell/errors.hpp"
#include "nopabell/fock.hpp"
#include "oracles.hpp"

namespace nopabell {
namespace {

using std::complex;
using test::dense;
using test::max_abs_diff;

constexpr complex<double> kI{0.0, 1.0};

SparseOperator random_sparse(std::size_t dim, std::mt19937_64& gen, double fill = 0.3) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<SparseOperator::Entry> entries;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (pick(gen) < fill) {
        entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           complex<double>(coeff(gen), coeff(gen))});
      }
    }
  }
  return SparseOperator::from_triplets(dim, entries);
}

TEST_CASE("truncated space constructors and validation") {
  TruncatedFockSpace s(4);
  CHECK(s.dim() == 16);
  CHECK(s.power_of_two());
  CHECK(s.bit_depth() == 4);

  auto t = TruncatedFockSpace::of_dimension(12);
  CHECK(t.dim() == 12);
  CHECK_FALSE(t.power_of_two());
  CHECK_THROWS_AS(t.bit_depth(), InvalidParameter);

  CHECK(s == TruncatedFockSpace::of_dimension(16));
  CHECK_FALSE(s == t);

  CHECK_THROWS_AS(TruncatedFockSpace(0), InvalidParameter);
  CHECK_THROWS_AS(TruncatedFockSpace(31), InvalidParameter);
  CHECK_THROWS_AS(TruncatedFockSpace::of_dimension(1), InvalidParameter);
}

TEST_CASE("space selection for a squeezing strength keeps the tail below 1e-9") {
  // At r = 1 the discarded mass is tanh(1)^(2M): 1.6e-4 for M = 16,
  // 2.7e-8 for M = 32 and 7.3e-16 for M = 64, so M = 64 is the first
  // power of two that clears the threshold.
  auto s = TruncatedFockSpace::for_squeezing(1.0);
  CHECK(s.dim() == 64);
  CHECK(nopa_coefficients(1.0, s, false).tail_weight <= 1e-9);
  auto smaller = TruncatedFockSpace(5);
  CHECK(nopa_coefficients(1.0, smaller, false).tail_weight > 1e-9);

  // Tiny squeezing needs only the minimum depth; large squeezing more.
  CHECK(TruncatedFockSpace::for_squeezing(0.01).dim() == 16);
  CHECK(TruncatedFockSpace::for_squeezing(2.0).dim() >
        TruncatedFockSpace::for_squeezing(1.0).dim());
  CHECK_THROWS_AS(TruncatedFockSpace::for_squeezing(-1.0), InvalidParameter);
}

TEST_CASE("state vectors") {
  TruncatedFockSpace s(2);
  auto v = StateVector::basis_state(s.dim(), 2);
  CHECK(v.dim() == 4);
  CHECK(v[2] == complex<double>(1.0, 0.0));
  CHECK(v[0] == complex<double>(0.0, 0.0));
  CHECK(v.is_normalized());
  CHECK_THROWS_AS(StateVector::basis_state(4, 4), InvalidParameter);

  StateVector w(std::vector<complex<double>>{{3.0, 0.0}, {0.0, 4.0}});
  CHECK(w.norm() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_FALSE(w.is_normalized());
  auto wn = w.normalized();
  CHECK(wn.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wn[0].real() == doctest::Approx(0.6).epsilon(1e-15));

  StateVector zero(std::vector<complex<double>>{{0.0, 0.0}});
  CHECK_THROWS_AS(zero.normalized(), InvalidParameter);

  // inner_product conjugates the bra side: <(i,1), (2i,3i)> = 2 + 3i.
  StateVector a(std::vector<complex<double>>{kI, {1.0, 0.0}});
  StateVector b(std::vector<complex<double>>{{0.0, 2.0}, {0.0, 3.0}});
  CHECK(inner_product(a, b) == complex<double>(2.0, 3.0));
  StateVector c(std::vector<complex<double>>{{1.0, 0.0}});
  CHECK_THROWS_AS(inner_product(a, c), DimensionMismatch);
}

TEST_CASE("triplet assembly sorts, merges and drops zeros") {
  std::vector<SparseOperator::Entry> entries = {
      {1, 0, {2.0, 0.0}},
      {0, 1, {1.0, 0.0}},
      {1, 0, {-1.0, 0.0}},   // merges with the first entry
      {0, 0, {0.0, 0.0}},    // dropped
      {1, 1, {1.0, 0.0}},
      {1, 1, {-1.0, 0.0}},   // merges to zero, dropped
  };
  auto op = SparseOperator::from_triplets(2, entries);
  CHECK(op.nnz() == 2);
  CHECK(op.entries()[0].row == 0);
  CHECK(op.entries()[0].col == 1);
  CHECK(op.at(1, 0) == complex<double>(1.0, 0.0));
  CHECK(op.at(0, 0) == complex<double>(0.0, 0.0));

  CHECK_THROWS_AS(SparseOperator::from_triplets(2, {{2, 0, {1.0, 0.0}}}),
                  InvalidParameter);
}

TEST_CASE("sparse arithmetic agrees with dense references") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = random_sparse(9, gen);
    auto b = random_sparse(9, gen);
    auto da = dense(a);
    auto db = dense(b);

    CHECK(max_abs_diff(dense(a + b), da + db) == 0.0);
    CHECK(max_abs_diff(dense(a - b), da - db) == 0.0);
    CHECK(max_abs_diff(dense(a * b), da * db) < 1e-14);
    CHECK(max_abs_diff(dense(a.scaled({0.5, -2.0})), complex<double>(0.5, -2.0) * da) ==
          0.0);
    CHECK(max_abs_diff(dense(a.adjoint()), da.adjoint()) == 0.0);
    CHECK(max_abs_diff(dense(commutator(a, b)), da * db - db * da) < 1e-14);
    CHECK(a.max_abs() == doctest::Approx(da.cwiseAbs().maxCoeff()).epsilon(1e-15));
  }

  auto small = random_sparse(4, gen);
  auto big = random_sparse(5, gen);
  CHECK_THROWS_AS(small + big, DimensionMismatch);
  CHECK_THROWS_AS(small * big, DimensionMismatch);
}

TEST_CASE("hermiticity and structural comparison") {
  auto id = SparseOperator::identity(5);
  CHECK(id.is_hermitian());
  CHECK(id.nnz() == 5);

  auto h = SparseOperator::from_triplets(2, {{0, 1, kI}, {1, 0, -kI}});
  CHECK(h.is_hermitian());
  auto nh = SparseOperator::from_triplets(2, {{0, 1, kI}, {1, 0, kI}});
  CHECK_FALSE(nh.is_hermitian());

  CHECK(h.structurally_equal(h));
  CHECK_FALSE(h.structurally_equal(nh));
  CHECK_FALSE(h.structurally_equal(id));
}

TEST_CASE("operator application matches dense matrix-vector product") {
  std::mt19937_64 gen(11);
  auto op = random_sparse(8, gen);
  auto d = dense(op);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<complex<double>> amps(8);
  for (auto& a : amps) a = complex<double>(coeff(gen), coeff(gen));
  StateVector v(amps);

  auto got = apply(op, v);
  Eigen::VectorXcd ev(8);
  for (int i = 0; i < 8; ++i) ev(i) = amps[static_cast<std::size_t>(i)];
  Eigen::VectorXcd want = d * ev;
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(got[static_cast<std::size_t>(i)] - want(i)) < 1e-14);
  }

  // Linearity: A(x v + w) = x A v + A w, exercised through apply directly.
  std::vector<complex<double>> amps2(8);
  for (auto& a : amps2) a = complex<double>(coeff(gen), coeff(gen));
  std::vector<complex<double>> mix(8);
  const complex<double> x{0.3, -1.7};
  for (int i = 0; i < 8; ++i) {
    mix[static_cast<std::size_t>(i)] = x * amps[static_cast<std::size_t>(i)] +
                                       amps2[static_cast<std::size_t>(i)];
  }
  auto lhs = apply(op, StateVector(mix));
  auto rhs1 = apply(op, v);
  auto rhs2 = apply(op, StateVector(amps2));
  for (int i = 0; i < 8; ++i) {
    auto idx = static_cast<std::size_t>(i);
    CHECK(std::abs(lhs[idx] - (x * rhs1[idx] + rhs2[idx])) < 1e-14);
  }
}

TEST_CASE("kronecker product matches the dense reference and its index map") {
  std::mt19937_64 gen(13);
  auto a = random_sparse(3, gen);
  auto b = random_sparse(4, gen);
  auto k = kronecker(a, b);
  CHECK(k.dim() == 12);
  CHECK(max_abs_diff(dense(k), test::dense_kron(dense(a), dense(b))) == 0.0);
  // Spot-check the pair index (i, j) -> i * dim(b) + j.
  CHECK(k.at(1 * 4 + 2, 2 * 4 + 3) == a.at(1, 2) * b.at(2, 3));
}

TEST_CASE("squeezed-state coefficients: values, tail and normalization") {
  TruncatedFockSpace space(3);  // M = 8
  auto raw = nopa_coefficients(1.0, space, false);
  CHECK(raw.dim() == 8);
  CHECK_FALSE(raw.normalized);
  CHECK(raw.r == 1.0);

  // c_0 = 1/cosh(1), c_{n+1}/c_n = tanh(1).
  CHECK(raw.coefficients[0] ==
        doctest::Approx(0.648054273663885399574977353226).epsilon(1e-15));
  const double t = std::tanh(1.0);
  for (int n = 0; n + 1 < 8; ++n) {
    CHECK(raw.coefficients[static_cast<std::size_t>(n + 1)] ==
          doctest::Approx(t * raw.coefficients[static_cast<std::size_t>(n)])
              .epsilon(1e-15));
  }

  // The discarded mass is exactly tanh(r)^(2M); frozen value for r=1, M=8.
  CHECK(raw.tail_weight ==
        doctest::Approx(0.0128108411384169408547940605711).epsilon(1e-14));
  // Kept mass and tail partition unity.
  CHECK(raw.sum_sq() + raw.tail_weight == doctest::Approx(1.0).epsilon(1e-14));

  auto renorm = nopa_coefficients(1.0, space, true);
  CHECK(renorm.normalized);
  CHECK(renorm.sum_sq() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(renorm.tail_weight == raw.tail_weight);

  // r = 0 is the two-mode vacuum.
  auto vac = nopa_coefficients(0.0, space, true);
  CHECK(vac.coefficients[0] == 1.0);
  for (std::size_t n = 1; n < 8; ++n) CHECK(vac.coefficients[n] == 0.0);
  CHECK(vac.tail_weight == 0.0);

  // The stable tail expression must hold up in the deep-tail regime where
  // naive pow(tanh r, 2M) would underflow relative accuracy.
  TruncatedFockSpace big(10);  // M = 1024
  auto deep = nopa_coefficients(0.25, big, false);
  // tanh(0.25)^2048: log via log1p keeps full relative precision.
  const double expected = std::exp(2048.0 * std::log(std::tanh(0.25)));
  CHECK(deep.tail_weight == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("schmidt expectation agrees with two independent dense routes") {
  TruncatedFockSpace space(3);  // M = 8
  auto state = nopa_coefficients(0.8, space, true);
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 6; ++trial) {
    auto a = random_sparse(8, gen);
    auto b = random_sparse(8, gen);
    auto fast = schmidt_expectation(state, a, b);
    auto slow = test::dense_schmidt_expectation(state, dense(a), dense(b));
    auto full = test::dense_tensor_expectation(state, dense(a), dense(b));
    CHECK(std::abs(fast - slow) < 1e-13);
    CHECK(std::abs(fast - full) < 1e-13);
  }

  auto wrong_dim = SparseOperator::identity(4);
  CHECK_THROWS_AS(schmidt_expectation(state, wrong_dim, wrong_dim),
                  DimensionMismatch);
}

TEST_CASE("error codes are stable strings") {
  try {
    TruncatedFockSpace(0);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == "invalid-parameter");
  }
  try {
    inner_product(StateVector(1), StateVector(2));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == "dimension-mismatch");
  }
}

}  // namespace
}  // namespace nopabell
