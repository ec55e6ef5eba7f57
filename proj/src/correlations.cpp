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

#include "nopabell/correlations.hpp"

#include <cmath>
#include <string>

#include "nopabell/pseudospin.hpp"

namespace nopabell {

namespace {

void check_squeezing(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw InvalidParameter("squeezing parameter must be finite and >= 0");
  }
}

}  // namespace

double squeeze_K(double r) {
  check_squeezing(r);
  return std::tanh(2.0 * r);
}

double squeeze_Kd(double r, std::size_t d) {
  check_squeezing(r);
  if (d == 0) throw InvalidParameter("grouping d must be >= 1");
  const double td = std::pow(std::tanh(r), static_cast<double>(d));
  return 2.0 * td / (1.0 + td * td);
}

double analytic_correlation(const CorrelationQuery& q) {
  if (!std::isfinite(q.alpha) || !std::isfinite(q.beta)) {
    throw InvalidParameter("measurement angles must be finite");
  }
  return std::cos(q.alpha) * std::cos(q.beta) +
         squeeze_Kd(q.r, q.d) * std::sin(q.alpha) * std::sin(q.beta);
}

NumericCorrelation numeric_correlation(const CorrelationQuery& q,
                                       const TruncatedFockSpace& space,
                                       bool renormalize) {
  const SchmidtState state = nopa_coefficients(q.r, space, renormalize);
  const SparseOperator sa = build_spin(SpinAxis::theta(q.alpha), q.d, space);
  const SparseOperator sb = build_spin(SpinAxis::theta(q.beta), q.d, space);

  NumericCorrelation out;
  out.value = schmidt_expectation(state, sa, sb).real();
  out.analytic = analytic_correlation(q);
  out.abs_err = std::abs(out.value - out.analytic);
  out.tail_weight = state.tail_weight;
  return out;
}

}  // namespace nopabell
