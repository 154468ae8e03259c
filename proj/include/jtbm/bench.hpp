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
 * \file bench.hpp
 *
 * Timing harnesses for the theta kernels.
 *
 * Parameters are drawn in the trigonometric convention, τ = i·u with u
 * uniform on [tau_min, tau_max], and converted to Ω = 2πu. Each timed call is
 * repeated until a batch lasts at least min_batch_seconds; the per-call time
 * of one batch is one run, and mean/std are taken over `repeats` runs with
 * freshly sampled parameters.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/rtheta.hpp"
#include "jtbm/theta1d.hpp"

namespace jtbm {

struct BenchConfig {
  std::vector<int> dims = {1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 16};
  int repeats = 10;
  std::uint64_t seed = 1;
  int full_max_dim = 8;
  double eps = 1e-8;
  double tau_min = 0.5;
  double tau_max = 1.0;
  double min_batch_seconds = 2e-4;
};

struct BenchRow {
  int dim = 0;
  std::string path;  // "factorized" or "full"
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(y) on log(x).
inline LogLogFit loglog_regression(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("loglog_regression: need at least two points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ly = std::log(y[i]);
    const double pred = f.intercept + f.slope * std::log(x[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean) * (ly - mean);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

namespace detail {

inline volatile double bench_sink = 0.0;

/// Seconds per call of f, measured over a batch of at least min_seconds.
template <class F>
double time_per_call(F&& f, double min_seconds) {
  using clock = std::chrono::steady_clock;
  long reps = 1;
  for (;;) {
    const auto t0 = clock::now();
    double acc = 0.0;
    for (long r = 0; r < reps; ++r) acc += f();
    const double el = std::chrono::duration<double>(clock::now() - t0).count();
    bench_sink = bench_sink + acc;
    if (el >= min_seconds || reps > (1L << 40)) return el / double(reps);
    reps = el > 0.0 ? std::max(reps * 2, static_cast<long>(std::ceil(1.2 * reps * min_seconds / el))) : reps * 2;
  }
}

inline void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  sd = 0.0;
  if (v.size() > 1) {
    for (double x : v) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / double(v.size() - 1));
  }
}

}  // namespace detail

struct FactorizationBench {
  std::vector<BenchRow> rows;
  LogLogFit factorized_fit;
  /// Diagonals of Ω drawn for each (dim, run), in draw order.
  std::vector<std::vector<double>> sampled_omegas;
};

/// Times rt_eval_factorized against rt_eval_full on random diagonal Ω.
inline FactorizationBench bench_factorized_vs_full(const BenchConfig& cfg) {
  if (!std::is_sorted(cfg.dims.begin(), cfg.dims.end())) throw InvalidArgument("bench: dims must be sorted ascending");
  if (cfg.repeats < 1) throw InvalidArgument("bench: repeats must be at least 1");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> tau(cfg.tau_min, cfg.tau_max);
  std::uniform_real_distribution<double> zdist(-1.0, 1.0);

  FactorizationBench out;
  std::vector<double> fx, fy;
  for (int d : cfg.dims) {
    std::vector<double> tf, tfull;
    for (int r = 0; r < cfg.repeats; ++r) {
      Eigen::VectorXd om(d), z(d);
      for (int j = 0; j < d; ++j) {
        om(j) = 2.0 * std::numbers::pi * tau(rng);
        z(j) = zdist(rng);
      }
      out.sampled_omegas.emplace_back(om.data(), om.data() + d);
      tf.push_back(detail::time_per_call(
          [&] { return rt_eval_factorized(z, om, cfg.eps, Derivatives::Hessian).log_value; }, cfg.min_batch_seconds));
      if (d <= cfg.full_max_dim) {
        const Eigen::MatrixXd dense = om.asDiagonal();
        RtOptions o;
        o.eps = cfg.eps;
        tfull.push_back(detail::time_per_call([&] { return rt_eval_full(z, dense, o).log_value; }, cfg.min_batch_seconds));
      }
    }
    BenchRow row{d, "factorized", 0, 0};
    detail::mean_std(tf, row.mean_seconds, row.std_seconds);
    out.rows.push_back(row);
    fx.push_back(d);
    fy.push_back(row.mean_seconds);
    if (!tfull.empty()) {
      BenchRow fr{d, "full", 0, 0};
      detail::mean_std(tfull, fr.mean_seconds, fr.std_seconds);
      out.rows.push_back(fr);
    }
  }
  if (fx.size() >= 2) out.factorized_fit = loglog_regression(fx, fy);
  return out;
}

struct DerivativeBenchRow {
  double z = 0.0;
  double omega = 0.0;
  double t_full = 0.0;       // generic ellipsoid lattice sum at N = 1
  double t_recursive = 0.0;  // theta1d recurrences
  double speedup = 0.0;      // t_full / t_recursive
};

/// Value plus first and second derivatives at N = 1, both routes.
inline std::vector<DerivativeBenchRow> bench_derivatives(const BenchConfig& cfg, int points) {
  if (points < 1) throw InvalidArgument("bench: points must be at least 1");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> tau(cfg.tau_min, cfg.tau_max);
  std::uniform_real_distribution<double> zdist(-1.0, 1.0);
  std::vector<DerivativeBenchRow> rows;
  for (int i = 0; i < points; ++i) {
    DerivativeBenchRow row;
    row.omega = 2.0 * std::numbers::pi * tau(rng);
    row.z = zdist(rng) * row.omega;
    const Eigen::VectorXd z1 = Eigen::VectorXd::Constant(1, row.z);
    const Eigen::MatrixXd om1 = Eigen::MatrixXd::Constant(1, 1, row.omega);
    RtOptions o;
    o.eps = cfg.eps;
    std::vector<double> tf, tr;
    for (int r = 0; r < cfg.repeats; ++r) {
      tf.push_back(detail::time_per_call(
          [&] {
            const RtEval e = rt_eval_full(z1, om1, o);
            return e.log_value + e.grad_norm(0) + e.hess_norm(0, 0);
          },
          cfg.min_batch_seconds));
      tr.push_back(detail::time_per_call(
          [&] {
            const ThetaEval e = theta_tilde(row.z, row.omega, cfg.eps);
            return e.log_value + e.dlog + e.d2log;
          },
          cfg.min_batch_seconds));
    }
    double sd = 0.0;
    detail::mean_std(tf, row.t_full, sd);
    detail::mean_std(tr, row.t_recursive, sd);
    row.speedup = row.t_full / row.t_recursive;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jtbm
