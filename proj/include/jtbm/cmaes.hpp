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
 * \file cmaes.hpp
 *
 * (μ/μ_w, λ)-CMA-ES with cumulative step-size adaptation, rank-one and
 * rank-μ covariance updates (Hansen's standard parameter setting).
 *
 * Candidates whose objective is +∞ are redrawn up to resample_limit times
 * and then kept with cost +∞, which ranks them last.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"

namespace jtbm {

struct CmaConfig {
  int population = 0;  // λ; 0 selects 4 + ⌊3 ln(dim)⌋
  double sigma0 = 0.3;
  int max_iterations = 500;
  std::uint64_t seed = 1;
  int resample_limit = 100;
  double tol_x = 1e-12;  // stop once σ·sqrt(max eig C) falls below this; 0 disables

  int population_for(Eigen::Index dim) const {
    if (population > 0) return population;
    return 4 + static_cast<int>(std::floor(3.0 * std::log(static_cast<double>(std::max<Eigen::Index>(dim, 1)))));
  }

  void validate(Eigen::Index dim) const {
    if (population_for(dim) < 4) throw InvalidArgument("CmaConfig: population must be at least 4");
    if (!(sigma0 > 0.0)) throw InvalidArgument("CmaConfig: sigma0 must be positive");
    if (max_iterations < 1) throw InvalidArgument("CmaConfig: max_iterations must be at least 1");
    if (resample_limit < 0) throw InvalidArgument("CmaConfig: resample_limit must be non-negative");
  }
};

struct CmaResult {
  Eigen::VectorXd best_x;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> cost_trace;  // best-so-far after each generation
  std::int64_t evaluations = 0;
  int iterations = 0;
  double wall_seconds = 0.0;
};

template <class Objective>
CmaResult cmaes_minimize(Objective&& objective, const Eigen::VectorXd& init, const CmaConfig& cfg) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::Index n = init.size();
  if (n < 1) throw InvalidArgument("cmaes: empty parameter vector");
  cfg.validate(n);

  const int lambda = cfg.population_for(n);
  const int mu = lambda / 2;
  VectorXd weights(mu);
  for (int i = 0; i < mu; ++i) weights(i) = std::log(mu + 0.5) - std::log(i + 1.0);
  weights /= weights.sum();
  const double mueff = 1.0 / weights.squaredNorm();
  const double nd = static_cast<double>(n);

  const double cc = (4.0 + mueff / nd) / (nd + 4.0 + 2.0 * mueff / nd);
  const double cs = (mueff + 2.0) / (nd + mueff + 5.0);
  const double c1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mueff);
  const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((nd + 2.0) * (nd + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (nd + 1.0)) - 1.0) + cs;
  const double chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  VectorXd mean = init;
  double sigma = cfg.sigma0;
  VectorXd pc = VectorXd::Zero(n);
  VectorXd ps = VectorXd::Zero(n);
  MatrixXd cov = MatrixXd::Identity(n, n);
  MatrixXd basis = MatrixXd::Identity(n, n);
  VectorXd scales = VectorXd::Ones(n);

  CmaResult res;
  res.best_x = init;
  res.best_cost = objective(static_cast<const VectorXd&>(init));
  res.evaluations = 1;
  bool any_feasible = std::isfinite(res.best_cost);

  MatrixXd xs(n, lambda);
  MatrixXd ys(n, lambda);
  std::vector<double> costs(lambda);
  std::vector<int> order(lambda);
  VectorXd z(n);

  for (int gen = 0; gen < cfg.max_iterations; ++gen) {
    for (int k = 0; k < lambda; ++k) {
      double c = std::numeric_limits<double>::infinity();
      for (int attempt = 0; attempt <= cfg.resample_limit; ++attempt) {
        for (Eigen::Index i = 0; i < n; ++i) z(i) = gauss(rng);
        ys.col(k) = basis * scales.cwiseProduct(z);
        xs.col(k) = mean + sigma * ys.col(k);
        c = objective(static_cast<const VectorXd&>(xs.col(k)));
        ++res.evaluations;
        if (std::isfinite(c)) break;
      }
      if (std::isnan(c)) c = std::numeric_limits<double>::infinity();
      costs[k] = c;
    }

    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] < costs[b]; });

    if (!any_feasible) {
      if (!std::isfinite(costs[order[0]]))
        throw DomainError("cmaes: initial point and every candidate of the first generation are infeasible");
      any_feasible = true;
    }
    if (costs[order[0]] < res.best_cost) {
      res.best_cost = costs[order[0]];
      res.best_x = xs.col(order[0]);
    }
    res.cost_trace.push_back(res.best_cost);
    res.iterations = gen + 1;

    VectorXd y_w = VectorXd::Zero(n);
    for (int i = 0; i < mu; ++i) y_w += weights(i) * ys.col(order[i]);
    mean += sigma * y_w;

    // C^{-1/2} y_w = B D⁻¹ Bᵀ y_w
    const VectorXd c_inv_sqrt_y = basis * (basis.transpose() * y_w).cwiseQuotient(scales);
    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * c_inv_sqrt_y;
    const double ps_norm = ps.norm();
    const double hsig_lhs = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * (gen + 1)));
    const bool hsig = hsig_lhs < (1.4 + 2.0 / (nd + 1.0)) * chi_n;
    pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * y_w;

    MatrixXd rank_mu = MatrixXd::Zero(n, n);
    for (int i = 0; i < mu; ++i) rank_mu.noalias() += weights(i) * ys.col(order[i]) * ys.col(order[i]).transpose();
    const double delta_h = hsig ? 0.0 : cc * (2.0 - cc);
    cov = (1.0 - c1 - cmu) * cov + c1 * (pc * pc.transpose() + delta_h * cov) + cmu * rank_mu;
    cov = 0.5 * (cov + cov.transpose());

    sigma *= std::exp((cs / damps) * (ps_norm / chi_n - 1.0));

    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(cov);
    basis = eig.eigenvectors();
    scales = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();

    if (cfg.tol_x > 0.0 && sigma * scales.maxCoeff() < cfg.tol_x) break;
    if (!std::isfinite(sigma) || !mean.allFinite()) break;
  }

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace jtbm
