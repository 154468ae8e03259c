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

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"

namespace jtbm {

/// N observations (rows) of an N_v-dimensional variable (columns).
struct Sample {
  Eigen::MatrixXd data;
  std::string source;

  Sample() = default;
  Sample(Eigen::MatrixXd d, std::string src = {}) : data(std::move(d)), source(std::move(src)) {}

  Eigen::Index size() const { return data.rows(); }
  Eigen::Index dim() const { return data.cols(); }
  Eigen::VectorXd row(Eigen::Index i) const { return data.row(i).transpose(); }
};

/// Throws unless the sample has at least two rows and only finite entries.
inline void validate_sample(const Sample& s) {
  if (s.size() < 2) throw InvalidArgument("sample needs at least 2 rows, got " + std::to_string(s.size()));
  if (s.dim() < 1) throw InvalidArgument("sample has no columns");
  if (!s.data.allFinite()) throw InvalidArgument("sample contains non-finite entries");
}

}  // namespace jtbm
