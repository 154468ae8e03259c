// Copyright 2026 The jtbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

/*!
 * \file theta1d.hpp
 *
 * One-dimensional rescaled theta function
 *
 *     θ̃(z|Ω) = Σ_{n∈Z} exp(−½Ωn² + nz),   Ω > 0, z real,
 *
 * and its first two z-derivatives, by naive recursive partial summation.
 *
 * The classical algorithm is stated for θ(z_c, τ) = Σ exp(iπn²τ + 2πinz_c).
 * The two are related by τ = iΩ/2π and z_c = z/(2πi), so the nome becomes
 * the real number q = e^{−Ω/2} and cos(2πz_c) becomes cosh(z). The summands
 *
 *     v_n = 2q^{n²} cosh(nz),  w_n = 2n q^{n²} sinh(nz),  ξ_n = 2n² q^{n²} cosh(nz)
 *
 * obey the Chebyshev-type three-term recurrences
 *
 *     v_{n+1} = q^{2n} v_1 v_n − q^{4n} v_{n−1}
 *     w_{n+1} = (n+1) [ 2cosh(z) q^{2n+1} w_n / n  − q^{4n} w_{n−1} / (n−1) ]
 *     ξ_{n+1} = (n+1)²[ 2cosh(z) q^{2n+1} ξ_n / n² − q^{4n} ξ_{n−1} / (n−1)² ]
 *
 * and the partial sums S_B = 1 + Σ_{0<n<B} v_n, U_B = Σ w_n, V_B = Σ ξ_n
 * approximate θ̃, θ̃', θ̃''. For Im τ ≥ 0.882 (Ω ≥ 2π·0.882) and
 * |z| ≤ Ω/2 all three remainders, measured in the (z_c, τ) convention, are
 * bounded by 3 q^{(B−1)²}. Converting the derivatives back to the real
 * convention divides those remainders by 2π and 4π², so the same B is safe.
 *
 * Arguments are first folded into |z| ≤ Ω/2 with θ̃(−z) = θ̃(z) and
 * θ̃(z + kΩ) = exp(kz + k²Ω/2) θ̃(z); results are returned in log space.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "jtbm/errors.hpp"

namespace jtbm {

inline constexpr double kDefaultThetaEps = 1e-14;

/// Smallest Ω for which the truncation bounds of the first derivative hold.
inline constexpr double kGradientBoundOmega = 2.0 * std::numbers::pi * 0.742;
/// Smallest Ω for which all three truncation bounds hold; below it the
/// kernel switches to adaptive stopping.
inline constexpr double kCertifiedOmega = 2.0 * std::numbers::pi * 0.882;

struct ThetaArgs {
  double z = 0.0;
  double omega = 1.0;
  double eps = kDefaultThetaEps;
};

/// log θ̃ and its first two log-derivatives in z.
struct ThetaEval {
  double log_value = 0.0;
  double dlog = 0.0;
  double d2log = 0.0;

  /// θ̃'/θ̃
  double normalized_gradient() const { return dlog; }
  /// θ̃''/θ̃
  double normalized_hessian() const { return d2log + dlog * dlog; }
};

struct ReducedArgument {
  double z_r = 0.0;         // |z_r| ≤ Ω/2
  std::int64_t k = 0;       // number of quasi-periods removed from |z|
  double log_prefactor = 0.0;
  int sign = 1;             // z = sign·(z_r + kΩ)
};

/// Maps z onto |z_r| ≤ Ω/2 using parity and quasi-periodicity.
inline ReducedArgument reduce_argument(double z, double omega) {
  ReducedArgument r;
  r.sign = std::signbit(z) ? -1 : 1;
  const double a = std::fabs(z);
  r.k = static_cast<std::int64_t>(std::llround(a / omega));
  const double k = static_cast<double>(r.k);
  r.z_r = a - k * omega;
  r.log_prefactor = k * r.z_r + 0.5 * k * k * omega;
  return r;
}

/// Truncation index B: smallest B ≥ 1 with 3 q^{(B−1)²} ≤ eps, q = e^{−Ω/2}.
inline int bound_B(double eps, double omega) {
  // 3 q^{m²} ≤ eps  ⇔  m² ≥ 2 ln(3/eps) / Ω
  const double need = 2.0 * std::log(3.0 / eps) / omega;
  if (need <= 0.0) return 1;
  auto m = static_cast<int>(std::ceil(std::sqrt(need)));
  // guard against rounding in sqrt/ceil on exact boundaries
  while (m > 0 && 3.0 * std::exp(-0.5 * omega * double(m - 1) * double(m - 1)) <= eps) --m;
  while (3.0 * std::exp(-0.5 * omega * double(m) * double(m)) > eps) ++m;
  return m + 1;
}

/// One step of the coupled v/w/ξ recurrences. Holds the summands for
/// indices n−1 and n together with the powers of q they need.
struct RecurrenceState {
  double v_prev = 2.0;  // v_0 = 2 q^0 cosh(0)
  double v = 0.0;
  double w_prev = 0.0;  // w_0 = 0
  double w = 0.0;
  double xi_prev = 0.0;  // ξ_0 = 0
  double xi = 0.0;
  int n = 1;
  double q2 = 0.0;        // q²
  double q2n = 0.0;       // q^{2n}
  double two_cosh_q = 0.0;  // v_1 = 2q cosh(z)
  double two_cosh = 0.0;    // 2cosh(z), kept only for the w/ξ coefficient

  /// Seeds the state at n = 1.
  static RecurrenceState start(double z, double omega) {
    RecurrenceState s;
    const double lo = std::exp(-0.5 * omega - z);
    const double hi = std::exp(-0.5 * omega + z);
    s.v = hi + lo;
    s.w = hi - lo;
    s.xi = s.v;
    s.two_cosh_q = s.v;
    s.q2 = std::exp(-omega);
    s.q2n = s.q2;
    return s;
  }
};

/// Advances every sequence from index n to n+1.
inline RecurrenceState recurrence_step(const RecurrenceState& s) {
  const double n = s.n;
  const double q4n = s.q2n * s.q2n;
  // q^{2n} v_1 = 2cosh(z) q^{2n+1}
  const double c = s.q2n * s.two_cosh_q;

  RecurrenceState t = s;
  t.v = c * s.v - q4n * s.v_prev;
  if (s.n == 1) {
    // w_0/(0) and ξ_0/(0)² are the limits sinh(0·z) = 0 and 2cosh(0·z) = 2.
    t.w = 2.0 * (c * s.w);
    t.xi = 4.0 * (c * s.xi - q4n * s.v_prev);
  } else {
    t.w = (n + 1.0) * (c * s.w / n - q4n * s.w_prev / (n - 1.0));
    t.xi = (n + 1.0) * (n + 1.0) * (c * s.xi / (n * n) - q4n * s.xi_prev / ((n - 1.0) * (n - 1.0)));
  }
  t.v_prev = s.v;
  t.w_prev = s.w;
  t.xi_prev = s.xi;
  t.q2n = s.q2n * s.q2;
  t.n = s.n + 1;
  return t;
}

/// Raw partial sums of θ̃, θ̃', θ̃'' at an already reduced argument.
struct PartialSums {
  double value = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  int terms = 0;  // number of n ≥ 1 summands included
};

namespace detail {

inline PartialSums sum_certified(double z, double omega, int B) {
  PartialSums out;
  if (B <= 1) return out;
  RecurrenceState s = RecurrenceState::start(z, omega);
  for (;;) {
    out.value += s.v;
    out.d1 += s.w;
    out.d2 += s.xi;
    ++out.terms;
    if (s.n + 1 >= B) break;
    s = recurrence_step(s);
  }
  return out;
}

// Terms shrink monotonically in the tail; stop after three consecutive
// negligible terms and add two more.
inline PartialSums sum_adaptive(double z, double omega, double eps) {
  constexpr int kMaxTerms = 50'000'000;
  PartialSums out;
  RecurrenceState s = RecurrenceState::start(z, omega);
  int quiet = 0;
  int extra = -1;
  for (;;) {
    out.value += s.v;
    out.d1 += s.w;
    out.d2 += s.xi;
    ++out.terms;
    if (extra >= 0) {
      if (++extra == 2) break;
    } else {
      const bool small = std::fabs(s.v) < eps * out.value &&
                         std::fabs(s.w) < eps * std::fmax(out.value, std::fabs(out.d1)) &&
                         std::fabs(s.xi) < eps * std::fmax(out.value, std::fabs(out.d2));
      quiet = small ? quiet + 1 : 0;
      if (quiet == 3) extra = 0;
    }
    if (out.terms >= kMaxTerms)
      throw ResourceError("theta1d: adaptive summation exceeded " + std::to_string(kMaxTerms) + " terms");
    s = recurrence_step(s);
  }
  return out;
}

}  // namespace detail

/// θ̃, θ̃', θ̃'' at |z| ≤ Ω/2 with absolute error ≤ eps on each.
inline PartialSums theta_partial_sums(double z, double omega, double eps) {
  if (omega >= kCertifiedOmega) return detail::sum_certified(z, omega, bound_B(eps, omega));
  return detail::sum_adaptive(z, omega, eps);
}

inline void validate(const ThetaArgs& a) {
  if (!std::isfinite(a.z) || !std::isfinite(a.omega) || !std::isfinite(a.eps))
    throw InvalidArgument("theta1d: non-finite argument");
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw InvalidArgument("theta1d: eps must lie in (0, 1)");
  if (!(a.omega > 0.0)) throw DomainError("theta1d: omega must be positive, got " + std::to_string(a.omega));
}

/// Evaluates log θ̃(z|Ω) and its log-derivatives.
inline ThetaEval theta_tilde(const ThetaArgs& args) {
  validate(args);
  const ReducedArgument r = reduce_argument(args.z, args.omega);
  const PartialSums s = theta_partial_sums(r.z_r, args.omega, args.eps);
  const double d1 = s.d1 / s.value;
  ThetaEval e;
  e.log_value = r.log_prefactor + std::log(s.value);
  e.dlog = r.sign * (static_cast<double>(r.k) + d1);
  e.d2log = s.d2 / s.value - d1 * d1;
  return e;
}

inline ThetaEval theta_tilde(double z, double omega, double eps = kDefaultThetaEps) {
  return theta_tilde(ThetaArgs{z, omega, eps});
}

}  // namespace jtbm
