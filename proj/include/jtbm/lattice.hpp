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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"

namespace jtbm {

/// Upper-triangular factor R of Ω = RᵀR, or DomainError when Ω is not
/// symmetric positive-definite.
inline Eigen::MatrixXd upper_cholesky(const Eigen::MatrixXd& omega, const char* what = "Omega") {
  if (omega.rows() != omega.cols()) throw InvalidArgument(std::string(what) + " must be square");
  if (!omega.allFinite()) throw InvalidArgument(std::string(what) + " has non-finite entries");
  const double scale = std::fmax(1.0, omega.cwiseAbs().maxCoeff());
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string(what) + " is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) throw DomainError(std::string(what) + " is not positive-definite");
  Eigen::MatrixXd r = llt.matrixU();
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    if (!(r(i, i) > 0.0)) throw DomainError(std::string(what) + " is not positive-definite");
  return r;
}

/// Visits every integer point n with (n − c)ᵀ Ω (n − c) ≤ radius2, where
/// Ω = RᵀR. The visitor receives (n, (n−c)ᵀΩ(n−c)). Coordinates are fixed
/// from the last to the first, each within the interval left open by the
/// ones already chosen (Fincke-Pohst).
template <class Visitor>
std::size_t enumerate_ellipsoid(const Eigen::MatrixXd& r, const Eigen::VectorXd& c, double radius2,
                                std::size_t point_budget, Visitor&& visit) {
  const Eigen::Index dim = r.rows();
  std::vector<double> partial(dim + 1, 0.0);  // partial[i]: contribution of coords i..dim-1
  std::vector<double> centre(dim, 0.0);
  Eigen::VectorXd n = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);  // n - c
  std::size_t count = 0;

  auto recurse = [&](auto&& self, Eigen::Index i) -> void {
    double shift = 0.0;
    for (Eigen::Index j = i + 1; j < dim; ++j) shift += r(i, j) * y(j);
    const double ctr = c(i) - shift / r(i, i);
    centre[i] = ctr;
    const double rem = radius2 - partial[i + 1];
    if (rem < 0.0) return;
    const double half = std::sqrt(rem) / r(i, i);
    const double lo = std::ceil(ctr - half);
    const double hi = std::floor(ctr + half);
    for (double k = lo; k <= hi; k += 1.0) {
      const double t = r(i, i) * (k - ctr);
      partial[i] = partial[i + 1] + t * t;
      if (partial[i] > radius2) continue;
      n(i) = k;
      y(i) = k - c(i);
      if (i == 0) {
        if (++count > point_budget)
          throw ResourceError("lattice enumeration exceeded the point budget of " + std::to_string(point_budget));
        visit(static_cast<const Eigen::VectorXd&>(n), partial[0]);
      } else {
        self(self, i - 1);
      }
    }
  };
  if (dim > 0) recurse(recurse, dim - 1);
  return count;
}

}  // namespace jtbm
