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
 * \file optimize.hpp
 *
 * Fitting protocol: 1-D marginal pre-training, assembly of a joint starting
 * point, then CMA-ES on the packed parameter vector.
 *
 * Hidden units are dealt round-robin to the visible dimensions. Each
 * dimension's marginal is fitted with its share of hidden units, and the
 * joint start is the block-structured model whose density is the product of
 * the marginal fits (Q and W block-diagonal), plus small noise on the
 * off-block entries.
 */

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/cmaes.hpp"
#include "jtbm/costs.hpp"
#include "jtbm/errors.hpp"
#include "jtbm/model.hpp"
#include "jtbm/sample.hpp"

namespace jtbm {

struct FitSpec {
  int n_h = 2;
  bool diagonal_q = true;
  CostKind cost = CostKind::Fisher;
};

struct FitConfig {
  CmaConfig cma{};
  int pretrain_iterations = 100;
  bool pretrain = true;
  double cross_noise = 0.01;
  ModelOptions model{};
};

struct FitReport {
  RtbmParams initial_params;
  RtbmParams best_params;
  double best_cost = 0.0;
  std::vector<double> cost_trace;
  double wall_seconds = 0.0;
  std::int64_t evaluations = 0;
  int iterations = 0;
};

/// Starting point of a marginal fit: T = 1, Q = 2π, W ~ N(0, 0.1²), B = 0.
inline RtbmParams default_init(Eigen::Index n_v, Eigen::Index n_h, bool diagonal_q, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 0.1);
  Eigen::MatrixXd w(n_v, n_h);
  for (Eigen::Index i = 0; i < n_v; ++i)
    for (Eigen::Index j = 0; j < n_h; ++j) w(i, j) = g(rng);
  const double q0 = 2.0 * std::numbers::pi;
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n_v, n_v);
  if (diagonal_q)
    return RtbmParams::pjtbm(t, Eigen::VectorXd::Constant(n_h, q0), w, Eigen::VectorXd::Zero(n_v),
                             Eigen::VectorXd::Zero(n_h));
  return RtbmParams::rtbm(t, q0 * Eigen::MatrixXd::Identity(n_h, n_h), w, Eigen::VectorXd::Zero(n_v),
                          Eigen::VectorXd::Zero(n_h));
}

/// Scales W down by half until the block is feasible.
inline RtbmParams repair_feasibility(RtbmParams p, int max_halvings = 80) {
  for (int i = 0; i < max_halvings && !is_feasible(p); ++i) p = p.with_w(0.5 * p.w());
  if (!is_feasible(p)) throw DomainError(std::string("cannot repair parameters: ") + to_string(check_feasibility(p)));
  return p;
}

/// Hidden units assigned to each visible dimension (round-robin).
inline std::vector<int> hidden_shares(Eigen::Index n_v, int n_h) {
  std::vector<int> shares(static_cast<std::size_t>(n_v), 0);
  for (int j = 0; j < n_h; ++j) ++shares[static_cast<std::size_t>(j % n_v)];
  return shares;
}

namespace detail {

struct MarginalFit {
  double t = 1.0;
  double b_v = 0.0;
  Eigen::MatrixXd q;  // share × share
  Eigen::VectorXd w;  // share
  Eigen::VectorXd b_h;
};

inline MarginalFit fit_marginal(const Sample& col, int share, const FitSpec& spec, const FitConfig& cfg,
                                std::uint64_t seed) {
  MarginalFit m;
  const Eigen::VectorXd x = col.data.col(0);
  const double mean = x.mean();
  const double var = (x.array() - mean).square().mean();
  if (share == 0) {
    // Gaussian marginal; both costs are minimized by the moment estimates.
    if (!(var > 0.0)) throw DegenerateDataError("marginal has zero variance");
    m.t = 1.0 / var;
    m.b_v = -mean / var;
    return m;
  }
  std::mt19937_64 rng(seed);
  const RtbmParams init = default_init(1, share, spec.diagonal_q, rng);
  const ParamLayout lay = ParamLayout::of(init);
  CmaConfig cma = cfg.cma;
  cma.max_iterations = cfg.pretrain_iterations;
  cma.seed = seed;
  const auto objective = [&](const Eigen::VectorXd& v) { return cost(spec.cost, unpack(v, lay), col, cfg.model); };
  const CmaResult r = cmaes_minimize(objective, pack(init), cma);
  const RtbmParams best = unpack(r.best_x, lay);
  m.t = best.t()(0, 0);
  m.b_v = best.b_v()(0);
  m.q = best.q();
  m.w = best.w().row(0).transpose();
  m.b_h = best.b_h();
  return m;
}

}  // namespace detail

/// Joint starting point assembled from per-dimension 1-D fits.
inline RtbmParams pretrain_marginals(const Sample& s, const FitSpec& spec, const FitConfig& cfg) {
  validate_sample(s);
  if (spec.n_h < 1) throw InvalidArgument("pretrain_marginals: N_h must be at least 1");
  const Eigen::Index nv = s.dim();
  const int nh = spec.n_h;
  const std::vector<int> shares = hidden_shares(nv, nh);

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(nv, nv);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(nh, nh);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nv, nh);
  Eigen::VectorXd b_v = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd b_h = Eigen::VectorXd::Zero(nh);
  Eigen::MatrixXi block_of_w = Eigen::MatrixXi::Zero(nv, nh);
  Eigen::MatrixXi block_of_q = Eigen::MatrixXi::Zero(nh, nh);

  // hidden unit j belongs to dimension j % nv; units[i] lists dimension i's units
  std::vector<std::vector<int>> units(static_cast<std::size_t>(nv));
  for (int j = 0; j < nh; ++j) units[static_cast<std::size_t>(j % nv)].push_back(j);

  for (Eigen::Index i = 0; i < nv; ++i) {
    const auto& mine = units[static_cast<std::size_t>(i)];
    detail::MarginalFit m;
    try {
      Sample col(s.data.col(i), s.source + "[col " + std::to_string(i) + "]");
      m = detail::fit_marginal(col, shares[static_cast<std::size_t>(i)], spec, cfg, cfg.cma.seed + 1000 + std::uint64_t(i));
    } catch (const Error& e) {
      throw DomainError("pretrain_marginals: dimension " + std::to_string(i) + ": " + e.what());
    }
    t(i, i) = m.t;
    b_v(i) = m.b_v;
    for (std::size_t a = 0; a < mine.size(); ++a) {
      w(i, mine[a]) = m.w(Eigen::Index(a));
      block_of_w(i, mine[a]) = 1;
      b_h(mine[a]) = m.b_h(Eigen::Index(a));
      for (std::size_t b = 0; b < mine.size(); ++b) {
        q(mine[a], mine[b]) = m.q(Eigen::Index(a), Eigen::Index(b));
        block_of_q(mine[a], mine[b]) = 1;
      }
    }
  }

  std::mt19937_64 rng(cfg.cma.seed + 77);
  std::normal_distribution<double> noise(0.0, cfg.cross_noise);
  for (Eigen::Index i = 0; i < nv; ++i)
    for (Eigen::Index j = 0; j < i; ++j) t(i, j) = t(j, i) = noise(rng);
  for (Eigen::Index i = 0; i < nv; ++i)
    for (Eigen::Index j = 0; j < nh; ++j)
      if (!block_of_w(i, j)) w(i, j) = noise(rng);
  if (!spec.diagonal_q)
    for (Eigen::Index i = 0; i < nh; ++i)
      for (Eigen::Index j = 0; j < i; ++j)
        if (!block_of_q(i, j)) q(i, j) = q(j, i) = noise(rng);

  RtbmParams joint = spec.diagonal_q ? RtbmParams::pjtbm(t, q.diagonal(), w, b_v, b_h) : RtbmParams::rtbm(t, q, w, b_v, b_h);
  if (!is_feasible(joint) && check_feasibility(joint) == Feasibility::TNotPositive) {
    Eigen::MatrixXd td = Eigen::MatrixXd(t.diagonal().asDiagonal());
    joint = spec.diagonal_q ? RtbmParams::pjtbm(td, q.diagonal(), w, b_v, b_h) : RtbmParams::rtbm(td, q, w, b_v, b_h);
  }
  return repair_feasibility(std::move(joint));
}

/// Pre-train (optional), then minimize the chosen cost with CMA-ES.
inline FitReport fit(const Sample& s, const FitSpec& spec, const FitConfig& cfg) {
  validate_sample(s);
  if (spec.n_h < 1) throw InvalidArgument("fit: N_h must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();

  RtbmParams init;
  if (cfg.pretrain) {
    init = pretrain_marginals(s, spec, cfg);
  } else {
    std::mt19937_64 rng(cfg.cma.seed + 4242);
    init = repair_feasibility(default_init(s.dim(), spec.n_h, spec.diagonal_q, rng));
  }
  const ParamLayout lay = ParamLayout::of(init);
  const auto objective = [&](const Eigen::VectorXd& v) { return cost(spec.cost, unpack(v, lay), s, cfg.model); };
  const CmaResult r = cmaes_minimize(objective, pack(init), cfg.cma);

  FitReport rep;
  rep.initial_params = init;
  rep.best_params = unpack(r.best_x, lay);
  rep.best_cost = r.best_cost;
  rep.cost_trace = r.cost_trace;
  rep.evaluations = r.evaluations;
  rep.iterations = r.iterations;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace jtbm
