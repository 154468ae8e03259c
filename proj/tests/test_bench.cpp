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

#include <gtest/gtest.h>

#include "jtbm/bench.hpp"

namespace jtbm {
namespace {

TEST(Bench, LogLogRegressionRecoversPowerLaw) {
  std::vector<double> x, y;
  for (double v : {1.0, 2.0, 4.0, 8.0}) {
    x.push_back(v);
    y.push_back(3.0 * std::pow(v, 1.5));
  }
  const LogLogFit f = loglog_regression(x, y);
  EXPECT_NEAR(f.slope, 1.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_THROW(loglog_regression({1.0}, {1.0}), InvalidArgument);
}

TEST(Bench, FactorizationRowsAndDeterministicParameters) {
  BenchConfig cfg;
  cfg.dims = {1, 2, 3};
  cfg.repeats = 2;
  cfg.full_max_dim = 2;
  cfg.min_batch_seconds = 1e-5;
  const FactorizationBench a = bench_factorized_vs_full(cfg);
  // one row per (dim, path)
  EXPECT_EQ(a.rows.size(), 5u);
  for (const BenchRow& r : a.rows) EXPECT_GT(r.mean_seconds, 0.0);
  const FactorizationBench b = bench_factorized_vs_full(cfg);
  EXPECT_EQ(a.sampled_omegas, b.sampled_omegas);
  for (const auto& om : a.sampled_omegas)
    for (double o : om) {
      EXPECT_GE(o, 2 * M_PI * cfg.tau_min);
      EXPECT_LE(o, 2 * M_PI * cfg.tau_max);
    }
}

TEST(Bench, DerivativeRows) {
  BenchConfig cfg;
  cfg.repeats = 1;
  cfg.min_batch_seconds = 1e-5;
  const auto rows = bench_derivatives(cfg, 3);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_GT(r.t_full, 0.0);
    EXPECT_GT(r.t_recursive, 0.0);
    EXPECT_LE(std::fabs(r.z), r.omega);
  }
  const auto again = bench_derivatives(cfg, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(rows[i].omega, again[i].omega);
}

TEST(Bench, ConfigErrors) {
  BenchConfig cfg;
  cfg.dims = {3, 1};
  EXPECT_THROW(bench_factorized_vs_full(cfg), InvalidArgument);
  EXPECT_THROW(bench_derivatives(BenchConfig{}, 0), InvalidArgument);
}

}  // namespace
}  // namespace jtbm
