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

#include "nopabell/errors.hpp"

namespace nopabell {

using complex = std::complex<double>;

/// Finite slice {|0>, ..., |M-1>} of the bosonic number basis.
///
/// The primary form is M = 2^D ("bit depth" D), under which every
/// grouped parity operator with a power-of-two grouping maps the basis
/// onto itself exactly and the operator identities hold without
/// truncation error. Arbitrary even dimensions are also constructible
/// (`of_dimension`) for the d-by-d groupings that are not powers of two;
/// those spaces have no bit depth.
class TruncatedFockSpace {
public:
  /// M = 2^bit_depth. Requires 1 <= bit_depth <= 30.
  explicit TruncatedFockSpace(int bit_depth);

  /// Arbitrary dimension m >= 2 (no bit-indexed structure).
  static TruncatedFockSpace of_dimension(std::size_t m);

  /// Smallest D in [4, 16] whose exact tail weight tanh(r)^(2*2^D) is
  /// at most 1e-9, clamped to the interval ends.
  static TruncatedFockSpace for_squeezing(double r);

  std::size_t dim() const noexcept { return dim_; }
  bool power_of_two() const noexcept { return bit_depth_ > 0; }

  /// D with M = 2^D. Throws InvalidParameter for spaces built by
  /// `of_dimension` with a non-power-of-two m.
  int bit_depth() const;

  friend bool operator==(const TruncatedFockSpace& a,
                         const TruncatedFockSpace& b) {
    return a.dim_ == b.dim_;
  }

private:
  TruncatedFockSpace(std::size_t dim, int bit_depth)
      : dim_(dim), bit_depth_(bit_depth) {}
  std::size_t dim_;
  int bit_depth_;  // 0 when the dimension is not a power of two
};

/// Complex amplitude vector over a truncated Fock basis.
class StateVector {
public:
  explicit StateVector(std::size_t dim) : amp_(dim, complex{0.0, 0.0}) {}
  explicit StateVector(std::vector<complex> amplitudes)
      : amp_(std::move(amplitudes)) {}

  static StateVector basis_state(std::size_t dim, std::size_t n);

  std::size_t dim() const noexcept { return amp_.size(); }
  complex& operator[](std::size_t i) { return amp_[i]; }
  const complex& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<complex>& amplitudes() const noexcept { return amp_; }

  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  StateVector normalized() const;

private:
  std::vector<complex> amp_;
};

complex inner_product(const StateVector& bra, const StateVector& ket);

/// Sparse complex matrix on a truncated Fock space, stored as
/// (row, col, value) triples sorted row-major, duplicates merged and
/// exact zeros dropped. Entry arithmetic is exact for integer-valued
/// operators, which is what the commutation-relation checks rely on.
class SparseOperator {
public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    complex value;
  };

  explicit SparseOperator(std::size_t dim) : dim_(dim) {}

  static SparseOperator identity(std::size_t dim);
  static SparseOperator from_triplets(std::size_t dim,
                                      std::vector<Entry> triplets);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Value at (row, col); zero when the entry is absent.
  complex at(std::size_t row, std::size_t col) const;

  SparseOperator operator+(const SparseOperator& other) const;
  SparseOperator operator-(const SparseOperator& other) const;
  SparseOperator operator*(const SparseOperator& other) const;
  SparseOperator scaled(complex factor) const;
  SparseOperator adjoint() const;

  /// Largest entry magnitude; 0 for the zero operator.
  double max_abs() const;

  /// True when the entry lists are identical, values compared bitwise.
  /// Meaningful for the integer-valued operators where arithmetic is
  /// exact; use max_abs of a difference otherwise.
  bool structurally_equal(const SparseOperator& other) const;

  bool is_hermitian(double tol = 0.0) const;

private:
  std::size_t dim_;
  std::vector<Entry> entries_;  // sorted by (row, col)
};

StateVector apply(const SparseOperator& op, const StateVector& v);

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

/// Tensor product, row-major index convention
/// (i, j) -> i * b.dim() + j.
SparseOperator kronecker(const SparseOperator& a, const SparseOperator& b);

/// Bipartite state sum_n c_n |n>|n> held as its real Schmidt
/// coefficient vector. Houses the two-mode squeezed vacuum.
struct SchmidtState {
  std::vector<double> coefficients;
  double r = 0.0;           // squeezing parameter
  double tail_weight = 0.0; // probability mass above the truncation
  bool normalized = false;

  std::size_t dim() const noexcept { return coefficients.size(); }
  double sum_sq() const;
};

/// Two-mode squeezed vacuum coefficients c_n = tanh(r)^n / cosh(r) for
/// n = 0..M-1 with exact tail weight tanh(r)^(2M). With `renormalize`
/// (the default) the vector is rescaled to unit 2-norm so that the
/// truncated state is a proper state; the tail weight is still reported
/// for error budgeting.
SchmidtState nopa_coefficients(double r, const TruncatedFockSpace& space,
                               bool renormalize = true);

/// <psi| A (x) B |psi> for psi = sum_n c_n |n>|n>, evaluated as
/// sum_{m,n} c_m c_n A_{mn} B_{mn} over the intersection of the two
/// sparsity patterns. Never forms the M^2-dimensional product space.
complex schmidt_expectation(const SchmidtState& state, const SparseOperator& a,
                            const SparseOperator& b);

}  // namespace nopabell
