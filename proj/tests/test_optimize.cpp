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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "jtbm/optimize.hpp"
#include "support/generators.hpp"

namespace jtbm {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double sphere(const VectorXd& x) { return x.squaredNorm(); }

double rosenbrock(const VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
    s += 100.0 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(1.0 - x(i), 2);
  return s;
}

TEST(Cmaes, SphereTen) {
  CmaConfig cfg;
  cfg.seed = 3;
  const CmaResult r = cmaes_minimize(sphere, VectorXd::Constant(10, 1.0), cfg);
  EXPECT_LE(r.best_cost, 1e-8);
  EXPECT_LE(r.iterations, 500);
}

TEST(Cmaes, RosenbrockTwo) {
  CmaConfig cfg;
  cfg.max_iterations = 2000;
  cfg.sigma0 = 0.5;
  const CmaResult r = cmaes_minimize(rosenbrock, VectorXd::Constant(2, -1.0), cfg);
  EXPECT_LE(r.best_cost, 1e-6);
  EXPECT_NEAR(r.best_x(0), 1.0, 1e-2);
  EXPECT_NEAR(r.best_x(1), 1.0, 1e-2);
}

TEST(Cmaes, FixedSeedIsBitIdentical) {
  CmaConfig cfg;
  cfg.seed = 99;
  cfg.max_iterations = 60;
  const CmaResult a = cmaes_minimize(rosenbrock, VectorXd::Constant(4, 0.2), cfg);
  const CmaResult b = cmaes_minimize(rosenbrock, VectorXd::Constant(4, 0.2), cfg);
  EXPECT_EQ(a.cost_trace, b.cost_trace);
  EXPECT_EQ(a.best_x, b.best_x);
}

TEST(Cmaes, TraceIsNonIncreasing) {
  CmaConfig cfg;
  cfg.max_iterations = 80;
  const CmaResult r = cmaes_minimize(rosenbrock, VectorXd::Constant(3, 0.0), cfg);
  for (std::size_t i = 1; i < r.cost_trace.size(); ++i) EXPECT_LE(r.cost_trace[i], r.cost_trace[i - 1]);
}

TEST(Cmaes, ResamplesInfeasibleCandidates) {
  // feasible half-space x0 > 0; optimum on its boundary side at (0.5, 0)
  auto f = [](const VectorXd& x) {
    if (x(0) <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(x(0) - 0.5, 2) + x(1) * x(1);
  };
  CmaConfig cfg;
  const CmaResult r = cmaes_minimize(f, (VectorXd(2) << 2.0, 2.0).finished(), cfg);
  EXPECT_LE(r.best_cost, 1e-8);
}

TEST(Cmaes, AllInfeasibleIsInitializationError) {
  auto f = [](const VectorXd&) { return std::numeric_limits<double>::infinity(); };
  CmaConfig cfg;
  cfg.resample_limit = 2;
  EXPECT_THROW(cmaes_minimize(f, VectorXd::Zero(3), cfg), DomainError);
}

TEST(Cmaes, ConfigValidation) {
  CmaConfig cfg;
  cfg.sigma0 = -1.0;
  EXPECT_THROW(cmaes_minimize(sphere, VectorXd::Zero(2), cfg), InvalidArgument);
  EXPECT_EQ(CmaConfig{}.population_for(10), 4 + int(std::floor(3 * std::log(10.0))));
}

TEST(Pretrain, HiddenSharesRoundRobin) {
  EXPECT_EQ(hidden_shares(2, 5), (std::vector<int>{3, 2}));
  EXPECT_EQ(hidden_shares(3, 2), (std::vector<int>{1, 1, 0}));
}

TEST(Pretrain, OneDimensionalInputIsSingleMarginalFit) {
  const Sample s = testgen::gaussian_sample(200, VectorXd::Constant(1, 1.0), MatrixXd::Constant(1, 1, 0.5), 3);
  FitConfig cfg;
  cfg.pretrain_iterations = 40;
  const FitSpec spec{2, true, CostKind::Fisher};
  const RtbmParams p = pretrain_marginals(s, spec, cfg);
  EXPECT_TRUE(is_feasible(p));
  EXPECT_EQ(p.n_v(), 1);
  EXPECT_EQ(p.n_h(), 2);
  // the joint start is exactly the marginal fit
  const auto m = detail::fit_marginal(s, 2, spec, cfg, cfg.cma.seed + 1000);
  EXPECT_DOUBLE_EQ(p.t()(0, 0), m.t);
  EXPECT_DOUBLE_EQ(p.b_v()(0), m.b_v);
}

TEST(Pretrain, JointStartIsFeasibleAndBlockStructured) {
  const Sample s = testgen::standin_bivariate(5, 300);
  FitConfig cfg;
  cfg.pretrain_iterations = 30;
  for (bool diag : {true, false}) {
    const RtbmParams p = pretrain_marginals(s, {4, diag, CostKind::Fisher}, cfg);
    EXPECT_TRUE(is_feasible(p));
    EXPECT_EQ(p.n_h(), 4);
    // off-block W entries carry only small noise
    EXPECT_LT(std::fabs(p.w()(0, 1)), 0.1);
    EXPECT_LT(std::fabs(p.w()(1, 0)), 0.1);
  }
}

TEST(Pretrain, ZeroVarianceDimensionIsReportedByIndex) {
  MatrixXd x(20, 2);
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i;
    x(i, 1) = 3.0;
  }
  FitConfig cfg;
  cfg.pretrain_iterations = 5;
  try {
    pretrain_marginals(Sample(x, "flat"), {1, true, CostKind::Fisher}, cfg);
    FAIL() << "expected an error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension 1"), std::string::npos);
  }
}

TEST(Fit, ImprovesOnInitialCostAndIsDeterministic) {
  const Sample s = testgen::standin_bivariate(8, 200);
  FitConfig cfg;
  cfg.pretrain_iterations = 20;
  cfg.cma.max_iterations = 40;
  cfg.cma.seed = 5;
  const FitSpec spec{2, true, CostKind::Fisher};
  const FitReport a = fit(s, spec, cfg);
  const FitReport b = fit(s, spec, cfg);
  EXPECT_LE(a.best_cost, fisher_cost(a.initial_params, s));
  EXPECT_TRUE(is_feasible(a.best_params));
  EXPECT_EQ(a.cost_trace, b.cost_trace);
  EXPECT_EQ(pack(a.best_params), pack(b.best_params));
  EXPECT_GT(a.wall_seconds, 0.0);
  EXPECT_EQ(a.iterations, int(a.cost_trace.size()));
}

TEST(Fit, WithoutPretraining) {
  const Sample s = testgen::standin_bivariate(9, 150);
  FitConfig cfg;
  cfg.pretrain = false;
  cfg.cma.max_iterations = 20;
  const FitReport r = fit(s, {2, false, CostKind::Nll}, cfg);
  EXPECT_TRUE(std::isfinite(r.best_cost));
  EXPECT_FALSE(r.best_params.diagonal_q());
}

TEST(Fit, RejectsBadSpec) {
  const Sample s = testgen::standin_bivariate(9, 50);
  EXPECT_THROW(fit(s, {0, true, CostKind::Fisher}, FitConfig{}), InvalidArgument);
}

}  // namespace
}  // namespace jtbm
