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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/sample.hpp"

namespace jtbm {

/// y = linear·x + offset, with log|det linear| cached.
class AffineMap {
 public:
  AffineMap() = default;

  AffineMap(Eigen::MatrixXd linear, Eigen::VectorXd offset) : linear_(std::move(linear)), offset_(std::move(offset)) {
    if (linear_.rows() != linear_.cols() || linear_.rows() != offset_.size())
      throw InvalidArgument("AffineMap: linear part must be square and match the offset");
    if (!linear_.allFinite() || !offset_.allFinite()) throw InvalidArgument("AffineMap: non-finite entries");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(linear_);
    const Eigen::VectorXd diag = lu.matrixLU().diagonal();
    double lad = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      if (diag(i) == 0.0 || !std::isfinite(diag(i))) throw DomainError("AffineMap: linear part is singular");
      lad += std::log(std::fabs(diag(i)));
    }
    log_abs_det_ = lad;
  }

  static AffineMap identity(Eigen::Index dim) {
    return AffineMap(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
  }

  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& offset() const { return offset_; }
  double log_abs_det() const { return log_abs_det_; }
  Eigen::Index dim() const { return offset_.size(); }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return linear_ * x + offset_; }

  AffineMap inverse() const {
    Eigen::MatrixXd inv = linear_.partialPivLu().inverse();
    Eigen::VectorXd off = -inv * offset_;
    return AffineMap(std::move(inv), std::move(off));
  }

 private:
  Eigen::MatrixXd linear_;
  Eigen::VectorXd offset_;
  double log_abs_det_ = 0.0;
};

inline Sample apply(const AffineMap& map, const Sample& s) {
  if (s.dim() != map.dim()) throw InvalidArgument("apply: sample and map dimensions differ");
  Eigen::MatrixXd out = (s.data * map.linear().transpose()).rowwise() + map.offset().transpose();
  return Sample(std::move(out), s.source);
}

inline AffineMap invert(const AffineMap& map) { return map.inverse(); }

/// z-score each column, then rotate onto the principal axes of the
/// correlation matrix: y = R·D⁻¹·(x − μ). Rows of R are eigenvectors in
/// descending eigenvalue order, each signed so its largest-magnitude entry is
/// positive.
inline AffineMap fit_zscore_pca(const Sample& s) {
  validate_sample(s);
  const Eigen::Index n = s.size();
  const Eigen::Index d = s.dim();
  if (n <= d) throw DegenerateDataError("fit_zscore_pca: need more rows than columns");

  const Eigen::VectorXd mean = s.data.colwise().mean().transpose();
  const Eigen::MatrixXd centred = s.data.rowwise() - mean.transpose();
  const Eigen::VectorXd sd = (centred.colwise().squaredNorm().transpose() / double(n - 1)).cwiseSqrt();
  for (Eigen::Index j = 0; j < d; ++j)
    if (!(sd(j) > 0.0)) throw DegenerateDataError("fit_zscore_pca: column " + std::to_string(j) + " has zero variance");

  const Eigen::MatrixXd z = centred * sd.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd corr = (z.transpose() * z) / double(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  if (eig.info() != Eigen::Success) throw DegenerateDataError("fit_zscore_pca: eigen-decomposition failed");

  const Eigen::VectorXd vals = eig.eigenvalues();
  const double top = std::fmax(vals.maxCoeff(), 0.0);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(vals(j) > 1e-12 * std::fmax(top, 1.0))) {
      Eigen::Index worst = 0;
      eig.eigenvectors().col(j).cwiseAbs().maxCoeff(&worst);
      throw DegenerateDataError("fit_zscore_pca: singular covariance, dimension " + std::to_string(worst) +
                                " is a linear combination of the others");
    }
  }

  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });

  Eigen::MatrixXd rot(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    Eigen::VectorXd v = eig.eigenvectors().col(order[r]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    rot.row(r) = v.transpose();
  }
  Eigen::MatrixXd linear = rot * sd.cwiseInverse().asDiagonal();
  Eigen::VectorXd offset = -linear * mean;
  return AffineMap(std::move(linear), std::move(offset));
}

}  // namespace jtbm
