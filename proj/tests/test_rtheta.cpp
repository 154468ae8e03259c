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
#include <random>

#include <gtest/gtest.h>

#include "jtbm/rtheta.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace jtbm {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST(Rtheta, FrozenTwoDimensionalValue) {
  MatrixXd om(2, 2);
  om << 6, 1, 1, 6;
  const RtEval e = rt_eval_full(VectorXd::Zero(2), om);
  // default truncation target is relative 1e-12
  EXPECT_NEAR(std::exp(e.log_value), 1.2144817193040494, 1.2144817193040494 * RtOptions{}.eps);
  EXPECT_EQ(e.grad_norm, VectorXd::Zero(2));
}

TEST(Rtheta, OneDimensionalFullPathMatchesKernel) {
  for (double omega : {0.7, 3.0, 6.0, 25.0})
    for (double z : {-4.0, -0.3, 0.0, 1.1, 9.0}) {
      const RtEval f = rt_eval_full(VectorXd::Constant(1, z), MatrixXd::Constant(1, 1, omega));
      const ThetaEval k = theta_tilde(z, omega);
      EXPECT_NEAR(f.log_value, k.log_value, 1e-12 * std::fmax(1.0, std::fabs(k.log_value)));
      EXPECT_NEAR(f.grad_norm(0), k.dlog, 1e-11 * std::fmax(1.0, std::fabs(k.dlog)));
      EXPECT_NEAR(f.hess_norm(0, 0), k.normalized_hessian(), 1e-10 * std::fmax(1.0, k.normalized_hessian()));
    }
}

TEST(Rtheta, FullPathAgreesWithBoxOracle) {
  std::mt19937_64 rng(21);
  for (int dim = 1; dim <= 3; ++dim)
    for (int trial = 0; trial < 15; ++trial) {
      const MatrixXd om = testgen::random_spd(dim, 1.5, 8.0, rng);
      const VectorXd z = testgen::random_vector(dim, 3.0, rng);
      const RtEval e = rt_eval_full(z, om);
      const oracle::RthetaRaw o = oracle::rtheta(z, om, dim == 3 ? 6 : 10);
      EXPECT_NEAR(e.log_value, o.log_value, 1e-11 * std::fmax(1.0, std::fabs(o.log_value)));
      EXPECT_LE((e.grad_norm - o.grad).lpNorm<Eigen::Infinity>(), 1e-10 * std::fmax(1.0, o.grad.lpNorm<Eigen::Infinity>()));
      EXPECT_LE((e.hess_norm - o.hess).lpNorm<Eigen::Infinity>(), 1e-9 * std::fmax(1.0, o.hess.lpNorm<Eigen::Infinity>()));
    }
}

TEST(Rtheta, FactorizationIdentityOnDiagonalOmega) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int dim = 1; dim <= 4; ++dim)
    for (int trial = 0; trial < 20; ++trial) {
      VectorXd d(dim);
      for (int j = 0; j < dim; ++j) d(j) = 2 * M_PI * u(rng);
      const VectorXd z = testgen::random_vector(dim, 2.0, rng);
      const RtEval f = rt_eval_factorized(z, d);
      const RtEval g = rt_eval_full(z, MatrixXd(d.asDiagonal()));
      EXPECT_NEAR(f.log_value, g.log_value, 1e-11 * std::fmax(1.0, std::fabs(g.log_value)));
      EXPECT_LE((f.grad_norm - g.grad_norm).lpNorm<Eigen::Infinity>(), 1e-10);
      EXPECT_LE((f.hess_norm - g.hess_norm).lpNorm<Eigen::Infinity>(), 1e-9);
    }
}

TEST(Rtheta, GradientAndHessianMatchFiniteDifferences) {
  std::mt19937_64 rng(23);
  for (int dim = 1; dim <= 3; ++dim)
    for (int trial = 0; trial < 10; ++trial) {
      const MatrixXd om = testgen::random_spd(dim, 1.0, 6.0, rng);
      const VectorXd z = testgen::random_vector(dim, 2.0, rng);
      auto lv = [&](const VectorXd& x) { return rt_eval_full(x, om).log_value; };
      const RtEval e = rt_eval_full(z, om);
      const VectorXd fd = oracle::fd_gradient5(lv, z);
      EXPECT_LE((fd - e.grad_norm).lpNorm<Eigen::Infinity>(), 1e-7);
      // ∂² log θ̃ = H − DDᵀ on the diagonal
      const VectorXd fd2 = oracle::fd_second5(lv, z);
      const VectorXd curv = e.hess_norm.diagonal() - e.grad_norm.cwiseProduct(e.grad_norm);
      EXPECT_LE((fd2 - curv).lpNorm<Eigen::Infinity>(), 1e-5);
    }
}

TEST(Rtheta, EvenInZ) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd om = testgen::random_spd(3, 1.0, 6.0, rng);
    const VectorXd z = testgen::random_vector(3, 2.0, rng);
    const RtEval a = rt_eval_full(z, om);
    const RtEval b = rt_eval_full(-z, om);
    EXPECT_NEAR(a.log_value, b.log_value, 1e-12 * std::fmax(1.0, std::fabs(a.log_value)));
    EXPECT_LE((a.grad_norm + b.grad_norm).lpNorm<Eigen::Infinity>(), 1e-11);
  }
}

TEST(Rtheta, QuasiPeriodicityUnderLatticeShift) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd om = testgen::random_spd(2, 1.0, 6.0, rng);
    const VectorXd z = testgen::random_vector(2, 1.0, rng);
    Eigen::VectorXd m(2);
    m << 1, -2;
    // θ̃(z + Ωm) = exp(mᵀz + ½mᵀΩm) θ̃(z)
    const double lhs = rt_eval_full(z + om * m, om).log_value;
    const double rhs = m.dot(z) + 0.5 * m.dot(om * m) + rt_eval_full(z, om).log_value;
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::fmax(1.0, std::fabs(rhs)));
  }
}

TEST(Rtheta, PointCountGrowsAsEpsShrinks) {
  MatrixXd om(3, 3);
  om << 3, 0.5, 0.2, 0.5, 2.5, 0.1, 0.2, 0.1, 4;
  const VectorXd z = VectorXd::Constant(3, 0.4);
  std::size_t prev = 0;
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-12, 1e-15}) {
    RtOptions o;
    o.eps = eps;
    const std::size_t n = rt_eval_full(z, om, o).points;
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Rtheta, PointBudgetExceededIsResourceError) {
  const MatrixXd om = 0.05 * MatrixXd::Identity(4, 4);
  RtOptions o;
  o.point_budget = 1000;
  EXPECT_THROW(rt_eval_full(VectorXd::Zero(4), om, o), ResourceError);
}

TEST(Rtheta, InvalidInputs) {
  MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;  // indefinite
  EXPECT_THROW(rt_eval_full(VectorXd::Zero(2), bad), DomainError);
  MatrixXd asym(2, 2);
  asym << 2, 1, 0, 2;
  EXPECT_THROW(rt_eval_full(VectorXd::Zero(2), asym), DomainError);
  EXPECT_THROW(rt_eval_full(VectorXd::Zero(3), MatrixXd::Identity(2, 2)), InvalidArgument);
  EXPECT_THROW(rt_eval_factorized(VectorXd::Zero(3), VectorXd::Ones(2)), InvalidArgument);
  EXPECT_THROW(rt_eval_factorized(VectorXd::Zero(2), VectorXd::Zero(2)), DomainError);
  RtOptions o;
  o.eps = 2.0;
  EXPECT_THROW(rt_eval_full(VectorXd::Zero(2), MatrixXd::Identity(2, 2), o), InvalidArgument);
}

TEST(Rtheta, DerivativeLevelsAreOptional) {
  RtOptions o;
  o.derivatives = Derivatives::None;
  const RtEval e = rt_eval_full(VectorXd::Ones(2), MatrixXd::Identity(2, 2) * 3, o);
  EXPECT_EQ(e.grad_norm.size(), 0);
  EXPECT_EQ(e.hess_norm.size(), 0);
  const RtEval f = rt_eval_factorized(VectorXd::Ones(2), VectorXd::Constant(2, 3.0), 1e-12, Derivatives::Gradient);
  EXPECT_EQ(f.grad_norm.size(), 2);
  EXPECT_EQ(f.hess_norm.size(), 0);
}

}  // namespace
}  // namespace jtbm
