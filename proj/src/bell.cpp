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

#include "nopabell/bell.hpp"

#include <cmath>
#include <numbers>

#include "nopabell/correlations.hpp"
#include "nopabell/errors.hpp"

namespace nopabell {

std::string to_string(BellKind kind) {
  switch (kind) {
    case BellKind::Chsh:
      return "chsh";
    case BellKind::BitXor:
      return "bit-xor";
    case BellKind::NumberXor:
      return "number-xor";
    case BellKind::Hamming:
      return "hamming";
    case BellKind::Weighted:
      return "weighted";
  }
  return "?";
}

double PlanarLhs::bound() const {
  return form == XorForm::Tight ? cos_coeff : 2.0 * cos_coeff;
}

double PlanarLhs::operator()(double gamma) const {
  if (!std::isfinite(gamma)) {
    throw InvalidParameter("gamma must be finite");
  }
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  const double cos_part = form == XorForm::Tight ? std::abs(c) : (1.0 - c);
  return cos_coeff * cos_part + sin_coeff * std::abs(s);
}

OptimalAngle PlanarLhs::optimum() const {
  OptimalAngle best;
  if (sin_coeff <= 0.0) {
    // Zero squeezing: the sin term vanishes and the value never exceeds
    // the classical bound, whatever the angle.
    best.degenerate = true;
    best.gamma_star = form == XorForm::Tight ? 0.0 : std::numbers::pi;
    best.max_lhs = bound();
    return best;
  }
  const double corner = std::atan2(sin_coeff, cos_coeff);
  if (form == XorForm::Tight) {
    best.gamma_star = corner;
    best.max_lhs = std::hypot(cos_coeff, sin_coeff);
  } else {
    // a(1 - cos g) + b sin g peaks past pi/2, where the cos term helps.
    best.gamma_star = std::numbers::pi - corner;
    best.max_lhs = cos_coeff + std::hypot(cos_coeff, sin_coeff);
  }
  return best;
}

OptimalAngle PlanarLhs::grid_optimum(std::size_t points) const {
  if (points < 2) throw InvalidParameter("grid needs at least 2 points");
  OptimalAngle best;
  best.gamma_star = 0.0;
  best.max_lhs = (*this)(0.0);
  for (std::size_t j = 1; j < points; ++j) {
    const double gamma =
        2.0 * std::numbers::pi * static_cast<double>(j) /
        static_cast<double>(points);
    const double value = (*this)(gamma);
    if (value > best.max_lhs) {
      best.max_lhs = value;
      best.gamma_star = gamma;
    }
  }
  return best;
}

namespace {

void check_grouping_count(int d) {
  if (d < 1) throw InvalidParameter("bit count d must be >= 1");
  if (d > 62) throw DepthExceeded("bit count d must be <= 62");
}

BellReport make_report(BellKind kind, double lhs, double bound) {
  BellReport rep;
  rep.kind = kind;
  rep.lhs = lhs;
  rep.classical_bound = bound;
  rep.violation = lhs - bound;
  return rep;
}

}  // namespace

PlanarLhs chsh_lhs(std::size_t d, double r) {
  return {2.0, 2.0 * squeeze_Kd(r, d), XorForm::Tight};
}

PlanarLhs bit_lhs(int k, double r, XorForm form) {
  if (k < 0) throw InvalidParameter("bit index k must be >= 0");
  if (k > 61) throw DepthExceeded("bit index k must be <= 61");
  return {1.0, squeeze_Kd(r, std::size_t{1} << k), form};
}

PlanarLhs number_lhs(int d, double r, XorForm form) {
  check_grouping_count(d);
  double a = 0.0, b = 0.0;
  for (int k = 0; k < d; ++k) {
    const double w = std::ldexp(1.0, k);  // 2^k
    a += w;
    b += w * squeeze_Kd(r, std::size_t{1} << k);
  }
  return {a, b, form};
}

PlanarLhs hamming_lhs(int d, double r, XorForm form) {
  check_grouping_count(d);
  double b = 0.0;
  for (int k = 0; k < d; ++k) b += squeeze_Kd(r, std::size_t{1} << k);
  return {static_cast<double>(d), b, form};
}

PlanarLhs weighted_lhs(const std::vector<double>& weights, double r,
                       XorForm form) {
  if (weights.empty() || static_cast<int>(weights.size()) > 62) {
    throw InvalidParameter("need between 1 and 62 bit weights");
  }
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = weights[k];
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidParameter("bit weights must be finite and >= 0");
    }
    a += w;
    b += w * squeeze_Kd(r, std::size_t{1} << k);
  }
  if (a == 0.0) throw InvalidParameter("bit weights must not all be zero");
  return {a, b, form};
}

BellReport chsh_functional(double e_ag, double e_ad, double e_bg,
                           double e_bd) {
  for (double e : {e_ag, e_ad, e_bg, e_bd}) {
    if (!(e >= -1.0 && e <= 1.0)) {
      throw InvalidParameter("correlations must lie in [-1, 1]");
    }
  }
  return make_report(BellKind::Chsh, std::abs(e_ag + e_ad) + std::abs(e_bg - e_bd),
                     2.0);
}

BellReport chsh_nopa(double gamma, std::size_t d, double r) {
  const PlanarLhs f = chsh_lhs(d, r);
  return make_report(BellKind::Chsh, f(gamma), f.bound());
}

BellReport bit_bell_nopa(double gamma, int k, double r, XorForm form) {
  const PlanarLhs f = bit_lhs(k, r, form);
  return make_report(BellKind::BitXor, f(gamma), f.bound());
}

BellReport number_bell_nopa(double gamma, int d, double r, XorForm form) {
  const PlanarLhs f = number_lhs(d, r, form);
  return make_report(BellKind::NumberXor, f(gamma), f.bound());
}

BellReport hamming_bell_nopa(double gamma, int d, double r, XorForm form) {
  const PlanarLhs f = hamming_lhs(d, r, form);
  return make_report(BellKind::Hamming, f(gamma), f.bound());
}

BellReport weighted_bell_nopa(const std::vector<double>& weights,
                              double gamma, double r, XorForm form) {
  const PlanarLhs f = weighted_lhs(weights, r, form);
  return make_report(BellKind::Weighted, f(gamma), f.bound());
}

OptimalAngle optimal_gamma(std::size_t d, double r) {
  return chsh_lhs(d, r).optimum();
}

LocalBoundScan scan_local_strategies() {
  LocalBoundScan scan;
  // A strategy deterministically assigns a bit to each of the four
  // settings on each side: 2^4 x 2^4 = 256 in total.  Settings 0 and 1
  // are measured on the first side, 2 and 3 on the second.
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      ++scan.strategies;
      const auto bit_a = [a](unsigned s) -> double { return (a >> s) & 1u; };
      const auto bit_b = [b](unsigned s) -> double { return (b >> s) & 1u; };
      const auto spin_a = [&](unsigned s) { return 1.0 - 2.0 * bit_a(s); };
      const auto spin_b = [&](unsigned s) { return 1.0 - 2.0 * bit_b(s); };

      const double chsh = std::abs(spin_a(0) * spin_b(2) +
                                   spin_a(0) * spin_b(3)) +
                          std::abs(spin_a(1) * spin_b(2) -
                                   spin_a(1) * spin_b(3));
      const auto xr = [&](unsigned s, unsigned t) {
        return bit_a(s) != bit_b(t) ? 1.0 : 0.0;
      };
      const double bit_xor =
          std::abs(xr(0, 2) + xr(0, 3) - 1.0) + std::abs(xr(1, 2) - xr(1, 3));

      if (chsh > scan.max_chsh) scan.max_chsh = chsh;
      if (bit_xor > scan.max_bit_xor) scan.max_bit_xor = bit_xor;
    }
  }
  scan.chsh_bound_achieved = scan.max_chsh == 2.0;
  scan.bit_bound_achieved = scan.max_bit_xor == 1.0;
  return scan;
}

}  // namespace nopabell
