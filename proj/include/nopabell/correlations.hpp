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

// Two-mode squeezed-vacuum correlation functions for planar pseudospin
// measurements, in closed form and recomputed numerically on a truncated
// space with an explicit truncation-error budget.

#ifndef NOPABELL_CORRELATIONS_HPP_
#define NOPABELL_CORRELATIONS_HPP_

#include <cstddef>

#include "nopabell/fock.hpp"

namespace nopabell {

// Joint measurement of s_{alpha,d} on one mode and s_{beta,d} on the other
// of a squeezed pair with parameter r.
struct CorrelationQuery {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t d = 1;
  double r = 0.0;
};

// K = tanh(2r): the x-x correlation strength at depth 1.  Strictly
// increasing in r, range [0, 1).
double squeeze_K(double r);

// K_d = 2 tanh^d r / (1 + tanh^{2d} r): depth-d correlation strength.
// Coincides with squeeze_K at d = 1 and strictly decreases in d for
// 0 < r < infinity.
double squeeze_Kd(double r, std::size_t d);

// cos(alpha) cos(beta) + K_d(r) sin(alpha) sin(beta).
double analytic_correlation(const CorrelationQuery& q);

struct NumericCorrelation {
  double value = 0.0;     // Schmidt-form expectation on the truncated state
  double analytic = 0.0;  // closed form, for reference
  double abs_err = 0.0;   // |value - analytic|
  double tail_weight = 0.0;
};

// Evaluates <s_{alpha,d} s'_{beta,d}> on the truncated squeezed state.
// With `renormalize` (the default) the coefficient vector is rescaled to
// unit norm first, which keeps the z-z correlation exactly 1 and bounds
// |value - analytic| by a small multiple of tail_weight; without it the
// raw coefficients are used and the difference is reported, not asserted.
// Requires 2d | M.
NumericCorrelation numeric_correlation(const CorrelationQuery& q,
                                       const TruncatedFockSpace& space,
                                       bool renormalize = true);

}  // namespace nopabell

#endif  // NOPABELL_CORRELATIONS_HPP_
