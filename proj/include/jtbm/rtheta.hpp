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
 * \file rtheta.hpp
 *
 * N-dimensional rescaled Riemann-Theta function
 *
 *     θ̃(z|Ω) = Σ_{n∈Z^N} exp(−½nᵀΩn + nᵀz)
 *
 * with its normalized gradient D = ∇θ̃/θ̃ and normalized Hessian
 * H = ∇∇ᵀθ̃/θ̃, i.e. the first and second moments of n under the lattice
 * weights. Two evaluation routes:
 *
 *  - rt_eval_full: lattice sum over an ellipsoid centred at the continuous
 *    maximiser c = Ω⁻¹z, any symmetric positive-definite Ω;
 *  - rt_eval_factorized: diagonal Ω, product of one-dimensional thetas.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/lattice.hpp"
#include "jtbm/theta1d.hpp"

namespace jtbm {

enum class Derivatives { None, Gradient, Hessian };

struct RtOptions {
  double eps = 1e-12;                   // relative truncation target on the lattice sum
  std::size_t point_budget = 20'000'000;  // max lattice points per evaluation
  Derivatives derivatives = Derivatives::Hessian;
};

struct RtEval {
  double log_value = 0.0;
  Eigen::VectorXd grad_norm;  // D
  Eigen::MatrixXd hess_norm;  // H
  std::size_t points = 0;     // lattice points summed (0 on the factorized path)
};

/// Squared truncation radius so that the discarded Gaussian tail, relative
/// to the sum, stays below eps. `shift2` is the quadratic form at the point
/// nearest c found by rounding, an upper bound on the distance from c to the
/// lattice.
inline double truncation_radius2(double eps, Eigen::Index dim, double shift2) {
  const double base = 2.0 * std::log(1.0 / eps);
  // chi-square tail: P(χ²_N > x) ≈ x^{N/2−1} e^{−x/2}
  double x = base;
  for (int it = 0; it < 8; ++it) x = base + std::fmax(0.0, double(dim) - 2.0) * std::log(std::fmax(x, 1.0)) + 2.0;
  // second moments weight the tail by |n|² ~ x
  x += 2.0 * std::log(std::fmax(x, 1.0));
  return x + shift2;
}

/// Centre and squared radius of the truncation ellipsoid.
struct TruncationRegion {
  Eigen::MatrixXd r;        // Ω = RᵀR
  Eigen::VectorXd centre;   // Ω⁻¹z
  double radius2 = 0.0;
  double log_peak = 0.0;    // ½ cᵀΩc = max of the exponent over R^N
};

inline TruncationRegion truncation_region(const Eigen::VectorXd& z, const Eigen::MatrixXd& omega, double eps) {
  if (z.size() != omega.rows()) throw InvalidArgument("rtheta: z and Omega dimensions differ");
  if (!z.allFinite()) throw InvalidArgument("rtheta: non-finite z");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("rtheta: eps must lie in (0, 1)");
  TruncationRegion t;
  t.r = upper_cholesky(omega);
  // Ω c = z  with Ω = RᵀR
  t.centre = t.r.triangularView<Eigen::Upper>().solve(t.r.transpose().triangularView<Eigen::Lower>().solve(z));
  t.log_peak = 0.5 * z.dot(t.centre);
  const Eigen::VectorXd nearest = t.centre.array().round().matrix();
  const double shift2 = (t.r * (nearest - t.centre)).squaredNorm();
  t.radius2 = truncation_radius2(eps, z.size(), shift2);
  return t;
}

/// Lattice-sum evaluation for a general positive-definite Ω.
inline RtEval rt_eval_full(const Eigen::VectorXd& z, const Eigen::MatrixXd& omega, const RtOptions& opt = {}) {
  const TruncationRegion reg = truncation_region(z, omega, opt.eps);
  const Eigen::Index dim = z.size();
  const bool grad = opt.derivatives != Derivatives::None;
  const bool hess = opt.derivatives == Derivatives::Hessian;

  // exponent(n) = log_peak − ½ (n−c)ᵀΩ(n−c)
  double total = 0.0;
  Eigen::VectorXd first = Eigen::VectorXd::Zero(grad ? dim : 0);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(hess ? dim : 0, hess ? dim : 0);
  const std::size_t points =
      enumerate_ellipsoid(reg.r, reg.centre, reg.radius2, opt.point_budget, [&](const Eigen::VectorXd& n, double d2) {
        const double w = std::exp(-0.5 * d2);
        total += w;
        if (grad) first.noalias() += w * n;
        if (hess) second.noalias() += w * n * n.transpose();
      });
  if (!(total > 0.0))
    throw ResourceError("rtheta: truncation ellipsoid contains no lattice point with non-zero weight");

  RtEval out;
  out.log_value = reg.log_peak + std::log(total);
  out.points = points;
  if (grad) {
    out.grad_norm = first / total;
    // the truncation region is symmetric about the origin when z = 0
    if (z.isZero(0.0)) out.grad_norm.setZero();
  }
  if (hess) out.hess_norm = second / total;
  return out;
}

inline void validate_diagonal(const Eigen::VectorXd& z, const Eigen::VectorXd& omega_diag) {
  if (z.size() != omega_diag.size()) throw InvalidArgument("rtheta: z and omega_diag dimensions differ");
}

/// Product evaluation for diagonal Ω. H has diagonal d2log_j + dlog_j² and
/// off-diagonal entries D_i D_j.
inline RtEval rt_eval_factorized(const Eigen::VectorXd& z, const Eigen::VectorXd& omega_diag,
                                 double eps = kDefaultThetaEps, Derivatives derivatives = Derivatives::Hessian) {
  validate_diagonal(z, omega_diag);
  const Eigen::Index dim = z.size();
  RtEval out;
  const bool grad = derivatives != Derivatives::None;
  const bool hess = derivatives == Derivatives::Hessian;
  if (grad) out.grad_norm.resize(dim);
  Eigen::VectorXd curvature(hess ? dim : 0);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const ThetaEval e = theta_tilde(z(j), omega_diag(j), eps);
    out.log_value += e.log_value;
    if (grad) out.grad_norm(j) = e.dlog;
    if (hess) curvature(j) = e.d2log;
  }
  if (hess) {
    out.hess_norm = out.grad_norm * out.grad_norm.transpose();
    out.hess_norm.diagonal() += curvature;
  }
  return out;
}

inline bool is_diagonal(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0.0) return false;
  return true;
}

}  // namespace jtbm
