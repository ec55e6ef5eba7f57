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

#include "nopabell/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nopabell/kernels.hpp"

namespace nopabell {

namespace {

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " +
                            std::to_string(a) + " and " + std::to_string(b));
  }
}

// log(tanh r) through log1p so the result stays below zero even where
// tanh(r) itself rounds to 1.
double log_tanh(double r) {
  const double e = std::exp(-2.0 * r);
  return std::log1p(-2.0 * e / (1.0 + e));
}

}  // namespace

TruncatedFockSpace::TruncatedFockSpace(int bit_depth)
    : dim_(0), bit_depth_(bit_depth) {
  if (bit_depth < 1 || bit_depth > 30) {
    throw InvalidParameter("bit depth must be in [1, 30], got " +
                           std::to_string(bit_depth));
  }
  dim_ = std::size_t{1} << bit_depth;
}

TruncatedFockSpace TruncatedFockSpace::of_dimension(std::size_t m) {
  if (m < 2 || m > (std::size_t{1} << 30)) {
    throw InvalidParameter("dimension must be in [2, 2^30], got " +
                           std::to_string(m));
  }
  const bool pow2 = std::has_single_bit(m);
  return TruncatedFockSpace(m, pow2 ? std::countr_zero(m) : 0);
}

TruncatedFockSpace TruncatedFockSpace::for_squeezing(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidParameter("squeezing parameter must be finite and >= 0");
  }
  int depth = 16;
  for (int d = 4; d <= 16; ++d) {
    const double m = static_cast<double>(std::size_t{1} << d);
    const double tail = r == 0.0 ? 0.0 : std::exp(2.0 * m * log_tanh(r));
    if (tail <= 1e-9) {
      depth = d;
      break;
    }
  }
  return TruncatedFockSpace(depth);
}

int TruncatedFockSpace::bit_depth() const {
  if (bit_depth_ == 0) {
    throw InvalidParameter("space of dimension " + std::to_string(dim_) +
                           " has no bit depth (not a power of two)");
  }
  return bit_depth_;
}

StateVector StateVector::basis_state(std::size_t dim, std::size_t n) {
  if (n >= dim) {
    throw InvalidParameter("basis index " + std::to_string(n) +
                           " out of range for dimension " +
                           std::to_string(dim));
  }
  StateVector v(dim);
  v[n] = complex{1.0, 0.0};
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const complex& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidParameter("cannot normalize the zero vector");
  StateVector out(*this);
  for (complex& a : out.amp_) a /= n;
  return out;
}

complex inner_product(const StateVector& bra, const StateVector& ket) {
  check_same_dim(bra.dim(), ket.dim(), "inner_product");
  complex s{0.0, 0.0};
  for (std::size_t i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  SparseOperator op(dim);
  op.entries_.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    op.entries_.push_back({static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(i), complex{1.0, 0.0}});
  }
  return op;
}

SparseOperator SparseOperator::from_triplets(std::size_t dim,
                                             std::vector<Entry> triplets) {
  for (const Entry& e : triplets) {
    if (e.row >= dim || e.col >= dim) {
      throw InvalidParameter("triplet (" + std::to_string(e.row) + ", " +
                             std::to_string(e.col) +
                             ") outside dimension " + std::to_string(dim));
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Entry& a, const Entry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  SparseOperator op(dim);
  op.entries_.reserve(triplets.size());
  for (const Entry& e : triplets) {
    if (!op.entries_.empty() && op.entries_.back().row == e.row &&
        op.entries_.back().col == e.col) {
      op.entries_.back().value += e.value;
      if (op.entries_.back().value == complex{0.0, 0.0}) {
        op.entries_.pop_back();
      }
    } else if (e.value != complex{0.0, 0.0}) {
      op.entries_.push_back(e);
    }
  }
  return op;
}

complex SparseOperator::at(std::size_t row, std::size_t col) const {
  const Entry probe{static_cast<std::uint32_t>(row),
                    static_cast<std::uint32_t>(col), complex{}};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return a.row != b.row ? a.row < b.row
                                                     : a.col < b.col;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) {
    return it->value;
  }
  return complex{0.0, 0.0};
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  check_same_dim(dim_, other.dim_, "operator+");
  SparseOperator out(dim_);
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto ia = entries_.begin(), ib = other.entries_.begin();
  while (ia != entries_.end() || ib != other.entries_.end()) {
    bool take_a;
    if (ia == entries_.end()) {
      take_a = false;
    } else if (ib == other.entries_.end()) {
      take_a = true;
    } else if (ia->row != ib->row) {
      take_a = ia->row < ib->row;
    } else if (ia->col != ib->col) {
      take_a = ia->col < ib->col;
    } else {
      const complex v = ia->value + ib->value;
      if (v != complex{0.0, 0.0}) out.entries_.push_back({ia->row, ia->col, v});
      ++ia;
      ++ib;
      continue;
    }
    out.entries_.push_back(take_a ? *ia++ : *ib++);
  }
  return out;
}

SparseOperator SparseOperator::operator-(const SparseOperator& other) const {
  return *this + other.scaled(complex{-1.0, 0.0});
}

SparseOperator SparseOperator::operator*(const SparseOperator& other) const {
  check_same_dim(dim_, other.dim_, "operator*");
  // Row offsets into the (row-major sorted) entry list of `other`.
  std::vector<std::size_t> row_begin(dim_ + 1, other.entries_.size());
  for (std::size_t i = other.entries_.size(); i-- > 0;) {
    row_begin[other.entries_[i].row] = i;
  }
  for (std::size_t r = dim_; r-- > 0;) {
    if (row_begin[r] > row_begin[r + 1]) row_begin[r] = row_begin[r + 1];
  }

  std::vector<complex> acc(dim_, complex{0.0, 0.0});
  std::vector<std::uint32_t> touched;
  std::vector<Entry> triplets;
  std::size_t i = 0;
  while (i < entries_.size()) {
    const std::uint32_t row = entries_[i].row;
    touched.clear();
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const std::uint32_t k = entries_[i].col;
      const complex va = entries_[i].value;
      for (std::size_t j = row_begin[k]; j < row_begin[k + 1]; ++j) {
        const std::uint32_t c = other.entries_[j].col;
        if (acc[c] == complex{0.0, 0.0}) touched.push_back(c);
        acc[c] += va * other.entries_[j].value;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t c : touched) {
      if (acc[c] != complex{0.0, 0.0}) {
        triplets.push_back({row, c, acc[c]});
      }
      acc[c] = complex{0.0, 0.0};
    }
  }
  SparseOperator out(dim_);
  out.entries_ = std::move(triplets);  // already sorted, merged, zero-free
  return out;
}

SparseOperator SparseOperator::scaled(complex factor) const {
  SparseOperator out(dim_);
  if (factor == complex{0.0, 0.0}) return out;
  out.entries_ = entries_;
  for (Entry& e : out.entries_) e.value *= factor;
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const Entry& e : entries_) {
    t.push_back({e.col, e.row, std::conj(e.value)});
  }
  return from_triplets(dim_, std::move(t));
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

bool SparseOperator::structurally_equal(const SparseOperator& other) const {
  if (dim_ != other.dim_ || entries_.size() != other.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].row != other.entries_[i].row ||
        entries_[i].col != other.entries_[i].col ||
        entries_[i].value != other.entries_[i].value) {
      return false;
    }
  }
  return true;
}

bool SparseOperator::is_hermitian(double tol) const {
  return (*this - adjoint()).max_abs() <= tol;
}

StateVector apply(const SparseOperator& op, const StateVector& v) {
  check_same_dim(op.dim(), v.dim(), "apply");
  StateVector out(v.dim());
  for (const SparseOperator::Entry& e : op.entries()) {
    out[e.row] += e.value * v[e.col];
  }
  return out;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

SparseOperator kronecker(const SparseOperator& a, const SparseOperator& b) {
  std::vector<SparseOperator::Entry> t;
  t.reserve(a.nnz() * b.nnz());
  const std::uint32_t nb = static_cast<std::uint32_t>(b.dim());
  for (const auto& ea : a.entries()) {
    for (const auto& eb : b.entries()) {
      t.push_back(
          {ea.row * nb + eb.row, ea.col * nb + eb.col, ea.value * eb.value});
    }
  }
  return SparseOperator::from_triplets(a.dim() * b.dim(), std::move(t));
}

double SchmidtState::sum_sq() const {
  return kernels::active().dot(coefficients.data(), coefficients.data(),
                               coefficients.size());
}

SchmidtState nopa_coefficients(double r, const TruncatedFockSpace& space,
                               bool renormalize) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidParameter("squeezing parameter must be finite and >= 0");
  }
  const std::size_t m = space.dim();
  SchmidtState state;
  state.r = r;
  state.coefficients.resize(m);
  const double t = std::tanh(r);
  kernels::active().geometric_fill(state.coefficients.data(), m,
                                   1.0 / std::cosh(r), t);
  state.tail_weight =
      r == 0.0 ? 0.0
               : std::exp(2.0 * static_cast<double>(m) * log_tanh(r));
  if (renormalize) {
    const double scale = 1.0 / std::sqrt(state.sum_sq());
    for (double& c : state.coefficients) c *= scale;
    state.normalized = true;
  }
  return state;
}

complex schmidt_expectation(const SchmidtState& state, const SparseOperator& a,
                            const SparseOperator& b) {
  check_same_dim(a.dim(), b.dim(), "schmidt_expectation");
  check_same_dim(state.dim(), a.dim(), "schmidt_expectation");
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  const std::vector<double>& c = state.coefficients;
  complex sum{0.0, 0.0};
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    const auto& x = ea[i];
    const auto& y = eb[j];
    if (x.row != y.row ? x.row < y.row : x.col < y.col) {
      ++i;
    } else if (x.row != y.row ? y.row < x.row : y.col < x.col) {
      ++j;
    } else {
      sum += c[x.row] * c[x.col] * x.value * y.value;
      ++i;
      ++j;
    }
  }
  return sum;
}

}  // namespace nopabell
