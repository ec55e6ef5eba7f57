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

// Bit-valued observables carved out of the number operator.
//
// On a space of dimension 2^D the number-basis index n is D bits wide, and
// the kth bit is itself a two-outcome observable: b_k = (1 - s_{z,2^k})/2,
// where s_{z,2^k} is the depth-2^k pseudospin z component.  Rotating the
// underlying pseudospin gives x/y/angle flavors of the same bit, each still
// projector-valued.  Weighted sums of bits rebuild (truncated) number
// operators in any of those bases, and the simultaneous eigenvectors of the
// x (or y) bit family have closed-form coefficients over the number basis.

#ifndef NOPABELL_NUMBER_BITS_HPP_
#define NOPABELL_NUMBER_BITS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "nopabell/fock.hpp"
#include "nopabell/pseudospin.hpp"

namespace nopabell {

// Measurement basis for bit and number observables.  Unlike SpinAxis there
// are no ladder kinds: a bit must be Hermitian and projector-valued.
struct NumberBasis {
  enum class Kind { Z, X, Y, Theta };

  Kind kind = Kind::Z;
  double angle = 0.0;  // only meaningful for Kind::Theta

  static NumberBasis z() { return {Kind::Z, 0.0}; }
  static NumberBasis x() { return {Kind::X, 0.0}; }
  static NumberBasis y() { return {Kind::Y, 0.0}; }
  static NumberBasis theta(double angle) { return {Kind::Theta, angle}; }

  // The pseudospin axis this basis rotates along.
  SpinAxis axis() const;
  std::string label() const;
};

// The kth bit of the number measurement in the given basis:
// (I - s_{basis,2^k})/2.  Projector-valued (b^2 = b).
// Requires 2^{k+1} <= M (throws DepthExceeded) and 2^{k+1} | M.
SparseOperator bit_operator(const NumberBasis& basis, int k,
                            const TruncatedFockSpace& space);

// Number operator truncated to the low `d` bits:
// sum_{k<d} 2^k (I - s_{basis,2^k})/2.  Spectrum is exactly {0..2^d-1}.
// In the Z basis this is diag(n mod 2^d).
SparseOperator truncated_number_operator(const NumberBasis& basis, int d,
                                         const TruncatedFockSpace& space);

// Simultaneous eigenvector of an x- or y-bit family, stored with the
// convention coefficient(0) = 1 (so it is not unit norm; see
// normalized_state()).
struct EigenCoeffVector {
  std::size_t m = 0;
  NumberBasis::Kind basis = NumberBasis::Kind::X;
  std::vector<complex> coefficients;

  std::size_t dim() const { return coefficients.size(); }
  // Unit-norm version (every coefficient has modulus 1, so the norm is
  // sqrt(M) exactly).
  StateVector normalized_state() const;
};

// Simultaneous eigenvector of all s_{x,2^k}: coefficient at n is
// (-1)^{popcount(m AND n)}.  Satisfies s_{x,2^k} v = (-1)^{bit_k(m)} v
// exactly, for every k < D.  Requires a power-of-two dimension and m < M.
EigenCoeffVector xbasis_eigenvector(std::size_t m,
                                    const TruncatedFockSpace& space);

// Y analogue: coefficient at n is (-1)^{popcount(m AND n)} * i^{popcount(n)}.
EigenCoeffVector ybasis_eigenvector(std::size_t m,
                                    const TruncatedFockSpace& space);

// Quantum exclusive-or of two bit-valued operators: a + b - 2ab.
// Reduces to classical XOR on commuting bits; order matters when the
// operands do not commute (see hermitian_part for expectation values).
// Callers are responsible for passing projector-valued operands.
SparseOperator quantum_xor(const SparseOperator& a, const SparseOperator& b);

// (op + adjoint(op))/2.
SparseOperator hermitian_part(const SparseOperator& op);

// Verifies, exactly, that the low-two-bit number product on two copies
// splits into bit products:
//   n_{z,2} (x) n'_{z,2} = B0 B'0 + 4 B1 B'1 + 2 (B0 B'1 + B1 B'0),
// where juxtaposition is the Kronecker product across the two copies.
// Requires M >= 4.
AlgebraReport product_decomposition_check(const TruncatedFockSpace& space);

// Verifies s_{x,2^k} |m_x> = (-1)^{bit_k(m)} |m_x> and the y analogue for
// every m < M and k < D; one report entry per (basis, k) carrying the worst
// residual over m.  All arithmetic is exact, so the expected residuals are
// identically zero.
AlgebraReport verify_eigenvectors(const TruncatedFockSpace& space);

// Probability that x-bits k+1 .. k+L of the vacuum all read 0:
// <0| prod_{l=k+1}^{k+L} (I + s_{x,2^l})/2 |0>.  Equals 2^{-L} exactly.
// Requires 2^{k+L+1} <= M.
double vacuum_xbit_block_probability(int k, int L,
                                     const TruncatedFockSpace& space);

}  // namespace nopabell

#endif  // NOPABELL_NUMBER_BITS_HPP_
