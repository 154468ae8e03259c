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
#include <limits>
#include <string>

#include "jtbm/errors.hpp"
#include "jtbm/model.hpp"
#include "jtbm/sample.hpp"

namespace jtbm {

/// Returned by the costs for parameter blocks outside the feasible set.
inline constexpr double kInfeasibleCost = std::numeric_limits<double>::infinity();

enum class CostKind { Fisher, Nll };

inline const char* to_string(CostKind c) { return c == CostKind::Fisher ? "fisher" : "nll"; }

inline CostKind parse_cost(const std::string& s) {
  if (s == "fisher") return CostKind::Fisher;
  if (s == "nll") return CostKind::Nll;
  throw InvalidArgument("unknown cost '" + s + "' (expected fisher or nll)");
}

/// Score-matching objective Σ_i ‖∇ log q(v_i)‖² + 2 Δ log q(v_i).
///
/// Plain sum over rows, no 1/N, and the data-only constant of the Fisher
/// divergence is dropped, so values are comparable only on the same sample.
/// Never touches the normalizing theta.
inline double fisher_cost(const RtbmParams& p, const Sample& s, const ModelOptions& opt = {}) {
  if (s.dim() != p.n_v()) throw InvalidArgument("fisher_cost: sample dimension does not match N_v");
  if (!is_feasible(p)) return kInfeasibleCost;
  try {
    const RtbmDensity dens(p, unnormalized(opt));
    double total = 0.0;
    Eigen::VectorXd v(s.dim());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      v = s.data.row(i).transpose();
      const ScoreLaplacian sl = dens.score_laplacian(v);
      total += sl.score.squaredNorm() + 2.0 * sl.laplacian.sum();
    }
    return std::isfinite(total) ? total : kInfeasibleCost;
  } catch (const ResourceError&) {
    return kInfeasibleCost;
  } catch (const DomainError&) {
    return kInfeasibleCost;
  }
}

/// Negative log-likelihood −Σ_i log P(v_i). The normalizing theta is
/// evaluated once per call.
inline double nll_cost(const RtbmParams& p, const Sample& s, const ModelOptions& opt = {}) {
  if (s.dim() != p.n_v()) throw InvalidArgument("nll_cost: sample dimension does not match N_v");
  if (!is_feasible(p)) return kInfeasibleCost;
  try {
    ModelOptions o = opt;
    o.normalize = true;
    const RtbmDensity dens(p, o);
    double total = 0.0;
    Eigen::VectorXd v(s.dim());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      v = s.data.row(i).transpose();
      total -= dens.log_density(v);
    }
    return std::isfinite(total) ? total : kInfeasibleCost;
  } catch (const ResourceError&) {
    return kInfeasibleCost;
  } catch (const DomainError&) {
    return kInfeasibleCost;
  }
}

inline double cost(CostKind kind, const RtbmParams& p, const Sample& s, const ModelOptions& opt = {}) {
  return kind == CostKind::Fisher ? fisher_cost(p, s, opt) : nll_cost(p, s, opt);
}

}  // namespace jtbm
