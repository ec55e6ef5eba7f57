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

// Pseudospin operators on a truncated number-state space.
//
// A depth parameter d >= 1 groups the number basis into blocks of d
// consecutive states.  The z component assigns alternating blocks the
// eigenvalues +1 and -1; the raising component shifts by d within pairs of
// blocks.  For d = 1 these are the familiar even/odd-parity pseudospin
// operators; larger d coarse-grains the ladder d states at a time.  On a
// space whose dimension is divisible by 2d the three components close the
// su(2) algebra exactly (in exact arithmetic, which the sparse layer
// preserves for these integer-valued matrices).

#ifndef NOPABELL_PSEUDOSPIN_HPP_
#define NOPABELL_PSEUDOSPIN_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "nopabell/fock.hpp"

namespace nopabell {

// Measurement axis for a pseudospin component.  Theta selects the
// cos(angle) * z + sin(angle) * x combination in the z-x plane.
struct SpinAxis {
  enum class Kind { Z, X, Y, Plus, Minus, Theta };

  Kind kind = Kind::Z;
  double angle = 0.0;  // only meaningful for Kind::Theta

  static SpinAxis z() { return {Kind::Z, 0.0}; }
  static SpinAxis x() { return {Kind::X, 0.0}; }
  static SpinAxis y() { return {Kind::Y, 0.0}; }
  static SpinAxis plus() { return {Kind::Plus, 0.0}; }
  static SpinAxis minus() { return {Kind::Minus, 0.0}; }
  static SpinAxis theta(double angle) { return {Kind::Theta, angle}; }

  // Short label used in reports, e.g. "z", "theta(0.785398)".
  std::string label() const;
};

// Builds the pseudospin component along `axis` at depth `d`.
//
// Requires d >= 1 and 2d dividing the space dimension; a partial trailing
// block would break hermiticity of x and y and the su(2) relations, so it
// is rejected rather than silently truncated.
SparseOperator build_spin(const SpinAxis& axis, std::size_t d,
                          const TruncatedFockSpace& space);

// One verified operator identity: `residual` is the largest entry of the
// difference between the two sides, compared against `tolerance`.
struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AlgebraReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = false;
  double max_residual = 0.0;
};

// Verifies the defining algebra at depth d: hermiticity of z/x/y,
// adjointness of the ladder pair, [z, +/-] = +/-2 (+/-), [+, -] = z,
// [x, y] = 2i z (cyclic), and z^2 = 1.  All identities hold entrywise in
// exact arithmetic; the report uses tolerance 0 except where a rotation
// angle introduces genuine rounding.
AlgebraReport verify_spin_algebra(std::size_t d,
                                  const TruncatedFockSpace& space);

// Verifies commutation across the power-of-two tower: [z_{2^j}, z_{2^k}],
// [z_{2^j}, x_{2^k}] and [x_{2^j}, x_{2^k}] all vanish for j, k <= max_k.
// Requires 2^{max_k + 1} to divide the space dimension.  Also confirms the
// vanishing is special to the tower by checking one incommensurate pair
// ([x_2, x_3]) is nonzero whenever 6 divides the dimension.
AlgebraReport verify_hierarchy(int max_k, const TruncatedFockSpace& space);

}  // namespace nopabell

#endif  // NOPABELL_PSEUDOSPIN_HPP_
