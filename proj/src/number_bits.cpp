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

#include "nopabell/number_bits.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "nopabell/kernels.hpp"

namespace nopabell {

namespace {

void check_bit_depth(int k, const TruncatedFockSpace& space,
                     const char* what) {
  if (k < 0) throw InvalidParameter(std::string(what) + ": bit index < 0");
  if (k >= 62 || (std::size_t{1} << (k + 1)) > space.dim()) {
    throw DepthExceeded(std::string(what) + ": bit " + std::to_string(k) +
                        " needs dimension >= 2^" + std::to_string(k + 1) +
                        ", have " + std::to_string(space.dim()));
  }
}

}  // namespace

SpinAxis NumberBasis::axis() const {
  switch (kind) {
    case Kind::Z:
      return SpinAxis::z();
    case Kind::X:
      return SpinAxis::x();
    case Kind::Y:
      return SpinAxis::y();
    case Kind::Theta:
      return SpinAxis::theta(angle);
  }
  return SpinAxis::z();
}

std::string NumberBasis::label() const { return axis().label(); }

SparseOperator bit_operator(const NumberBasis& basis, int k,
                            const TruncatedFockSpace& space) {
  check_bit_depth(k, space, "bit_operator");
  const SparseOperator spin =
      build_spin(basis.axis(), std::size_t{1} << k, space);
  return (SparseOperator::identity(space.dim()) - spin)
      .scaled(complex{0.5, 0.0});
}

SparseOperator truncated_number_operator(const NumberBasis& basis, int d,
                                         const TruncatedFockSpace& space) {
  if (d < 1) throw InvalidParameter("bit count d must be >= 1");
  check_bit_depth(d - 1, space, "truncated_number_operator");
  SparseOperator sum(space.dim());
  for (int k = 0; k < d; ++k) {
    const double weight = static_cast<double>(std::uint64_t{1} << k);
    sum = sum + bit_operator(basis, k, space).scaled(complex{weight, 0.0});
  }
  return sum;
}

StateVector EigenCoeffVector::normalized_state() const {
  StateVector v(dim());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim()));
  for (std::size_t n = 0; n < dim(); ++n) v[n] = coefficients[n] * scale;
  return v;
}

namespace {

std::vector<double> parity_signs(std::size_t m, std::size_t dim) {
  std::vector<double> signs(dim);
  kernels::active().parity_sign_fill(signs.data(), dim, m);
  return signs;
}

void check_eigen_args(std::size_t m, const TruncatedFockSpace& space) {
  space.bit_depth();  // rejects non-power-of-two spaces
  if (m >= space.dim()) {
    throw InvalidParameter("eigenvector label " + std::to_string(m) +
                           " out of range for dimension " +
                           std::to_string(space.dim()));
  }
}

}  // namespace

EigenCoeffVector xbasis_eigenvector(std::size_t m,
                                    const TruncatedFockSpace& space) {
  check_eigen_args(m, space);
  EigenCoeffVector v;
  v.m = m;
  v.basis = NumberBasis::Kind::X;
  const std::vector<double> signs = parity_signs(m, space.dim());
  v.coefficients.reserve(space.dim());
  for (double s : signs) v.coefficients.emplace_back(s, 0.0);
  return v;
}

EigenCoeffVector ybasis_eigenvector(std::size_t m,
                                    const TruncatedFockSpace& space) {
  check_eigen_args(m, space);
  EigenCoeffVector v;
  v.m = m;
  v.basis = NumberBasis::Kind::Y;
  const std::vector<double> signs = parity_signs(m, space.dim());
  v.coefficients.resize(space.dim());
  kernels::active().quarter_phase_fill(v.coefficients.data(), signs.data(),
                                       space.dim());
  return v;
}

SparseOperator quantum_xor(const SparseOperator& a, const SparseOperator& b) {
  return a + b - (a * b).scaled(complex{2.0, 0.0});
}

SparseOperator hermitian_part(const SparseOperator& op) {
  return (op + op.adjoint()).scaled(complex{0.5, 0.0});
}

AlgebraReport product_decomposition_check(const TruncatedFockSpace& space) {
  if (space.dim() < 4) {
    throw InvalidParameter("product decomposition needs dimension >= 4");
  }
  const NumberBasis z = NumberBasis::z();
  const SparseOperator n2 = truncated_number_operator(z, 2, space);
  const SparseOperator b0 = bit_operator(z, 0, space);
  const SparseOperator b1 = bit_operator(z, 1, space);

  // n_{z,2} (x) n'_{z,2} against its expansion over bit pairs; the cross
  // terms couple *different* bits of the two copies.
  const SparseOperator lhs = kronecker(n2, n2);
  const SparseOperator rhs =
      kronecker(b0, b0) + kronecker(b1, b1).scaled(complex{4.0, 0.0}) +
      (kronecker(b0, b1) + kronecker(b1, b0)).scaled(complex{2.0, 0.0});

  AlgebraReport report;
  IdentityCheck check;
  check.name = "n2 (x) n2 = B0B0' + 4 B1B1' + 2(B0B1' + B1B0')";
  check.residual = (lhs - rhs).max_abs();
  check.tolerance = 0.0;
  check.pass = check.residual <= check.tolerance;
  report.checks.push_back(check);
  report.all_pass = check.pass;
  report.max_residual = check.residual;
  return report;
}

AlgebraReport verify_eigenvectors(const TruncatedFockSpace& space) {
  const int depth = space.bit_depth();
  AlgebraReport report;
  report.all_pass = true;
  report.max_residual = 0.0;

  for (int basis = 0; basis < 2; ++basis) {
    const bool use_x = basis == 0;
    for (int k = 0; k < depth; ++k) {
      const SparseOperator spin = build_spin(
          use_x ? SpinAxis::x() : SpinAxis::y(), std::size_t{1} << k, space);
      double worst = 0.0;
      for (std::size_t m = 0; m < space.dim(); ++m) {
        const EigenCoeffVector vec =
            use_x ? xbasis_eigenvector(m, space) : ybasis_eigenvector(m, space);
        const StateVector v{std::vector<complex>(vec.coefficients)};
        const StateVector image = apply(spin, v);
        const double eig = (m >> k) & 1 ? -1.0 : 1.0;
        for (std::size_t n = 0; n < space.dim(); ++n) {
          const double dev = std::abs(image[n] - eig * v[n]);
          if (dev > worst) worst = dev;
        }
      }
      IdentityCheck check;
      check.name = std::string("s(") + (use_x ? "x" : "y") + "," +
                   std::to_string(std::size_t{1} << k) +
                   ") eigenvector identity, all m";
      check.residual = worst;
      check.tolerance = 0.0;
      check.pass = worst <= 0.0;
      report.checks.push_back(check);
      report.all_pass = report.all_pass && check.pass;
      if (worst > report.max_residual) report.max_residual = worst;
    }
  }
  return report;
}

double vacuum_xbit_block_probability(int k, int L,
                                     const TruncatedFockSpace& space) {
  if (k < 0 || L < 1) {
    throw InvalidParameter("block probability needs k >= 0 and L >= 1");
  }
  check_bit_depth(k + L, space, "vacuum_xbit_block_probability");
  // Bit value 0 corresponds to spin +1, so the projector for "bit l reads
  // 0" is (I + s_{x,2^l})/2; the factors commute.
  StateVector v = StateVector::basis_state(space.dim(), 0);
  for (int l = k + 1; l <= k + L; ++l) {
    const SparseOperator proj =
        (SparseOperator::identity(space.dim()) +
         build_spin(SpinAxis::x(), std::size_t{1} << l, space))
            .scaled(complex{0.5, 0.0});
    v = apply(proj, v);
  }
  return inner_product(StateVector::basis_state(space.dim(), 0), v).real();
}

}  // namespace nopabell
