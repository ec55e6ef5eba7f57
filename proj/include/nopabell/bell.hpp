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

// Bell functionals for pseudospin, bit, and number measurements on the
// two-mode squeezed state.
//
// Every functional here is evaluated with the setting convention
// (alpha, beta) = (0, pi/2) on one side and (gamma, -gamma) on the other,
// under which the squeezed-state value takes the planar form
//   a |cos gamma| + b |sin gamma|
// with a the classical bound.  The per-functional coefficients:
//
//   spin CHSH        a = 2,        b = 2 K_d
//   single bit k     a = 1,        b = K_{2^k}
//   number, d bits   a = 2^d - 1,  b = sum_k 2^k K_{2^k}
//   bit count        a = d,        b = sum_k K_{2^k}
//   weighted bits    a = sum w_k,  b = sum w_k K_{2^k}
//
// The bit/number inequalities come in two algebraic forms: the tight one,
// |F1 + F2 - a| + |F3 - F4| <= a, and the looser corollary
// |F1 + F2| + |F3 - F4| <= 2a whose squeezed-state value is
// a |1 - cos gamma| + b |sin gamma|.  The tight form is the default.

#ifndef NOPABELL_BELL_HPP_
#define NOPABELL_BELL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nopabell {

enum class BellKind { Chsh, BitXor, NumberXor, Hamming, Weighted };

enum class XorForm { Tight, Corollary };

std::string to_string(BellKind kind);

// Four measurement settings: alpha, beta on one side, gamma, delta on the
// other.
struct AngleSet {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

struct BellReport {
  BellKind kind = BellKind::Chsh;
  double lhs = 0.0;
  double classical_bound = 0.0;
  double violation = 0.0;  // lhs - classical_bound
  std::optional<double> standard_error;  // set by sampled estimates only
  std::string warning;                   // empty when none
};

struct OptimalAngle {
  double gamma_star = 0.0;
  double max_lhs = 0.0;
  bool degenerate = false;  // r = 0: flat in gamma, bound never exceeded
};

// The squeezed-state value of one functional as a function of gamma.
struct PlanarLhs {
  double cos_coeff = 0.0;  // a above; also the tight classical bound
  double sin_coeff = 0.0;  // b above
  XorForm form = XorForm::Tight;

  double bound() const;
  double operator()(double gamma) const;
  // Closed-form maximizer: gamma* = atan(b/a) with max sqrt(a^2 + b^2)
  // for the tight form; gamma* = pi - atan(b/a) with max a + sqrt(a^2+b^2)
  // for the corollary.
  OptimalAngle optimum() const;
  // Brute-force maximum over a uniform gamma grid on [0, 2 pi); used to
  // cross-validate optimum().
  OptimalAngle grid_optimum(std::size_t points) const;
};

PlanarLhs chsh_lhs(std::size_t d, double r);
PlanarLhs bit_lhs(int k, double r, XorForm form = XorForm::Tight);
PlanarLhs number_lhs(int d, double r, XorForm form = XorForm::Tight);
PlanarLhs hamming_lhs(int d, double r, XorForm form = XorForm::Tight);
PlanarLhs weighted_lhs(const std::vector<double>& weights, double r,
                       XorForm form = XorForm::Tight);

// CHSH from four externally supplied correlations:
// |E_ag + E_ad| + |E_bg - E_bd| <= 2.  Inputs must lie in [-1, 1].
BellReport chsh_functional(double e_ag, double e_ad, double e_bg,
                           double e_bd);

// Closed-form reports at a specific gamma.
BellReport chsh_nopa(double gamma, std::size_t d, double r);
BellReport bit_bell_nopa(double gamma, int k, double r,
                         XorForm form = XorForm::Tight);
BellReport number_bell_nopa(double gamma, int d, double r,
                            XorForm form = XorForm::Tight);
BellReport hamming_bell_nopa(double gamma, int d, double r,
                             XorForm form = XorForm::Tight);
BellReport weighted_bell_nopa(const std::vector<double>& weights,
                              double gamma, double r,
                              XorForm form = XorForm::Tight);

// gamma* = atan(K_d) with maximum 2 sqrt(1 + K_d^2), for the spin CHSH.
// At r = 0 the functional is flat at the bound; flagged degenerate.
OptimalAngle optimal_gamma(std::size_t d, double r);

// Exhaustive scan over deterministic local strategies: each side assigns a
// fixed bit to each of the four settings (2^8 strategies).  Records the
// maximum CHSH and single-bit XOR functional values, which must sit exactly
// at the classical bounds 2 and 1.
struct LocalBoundScan {
  std::size_t strategies = 0;
  double max_chsh = 0.0;
  double max_bit_xor = 0.0;
  bool chsh_bound_achieved = false;
  bool bit_bound_achieved = false;
};

LocalBoundScan scan_local_strategies();

}  // namespace nopabell

#endif  // NOPABELL_BELL_HPP_
