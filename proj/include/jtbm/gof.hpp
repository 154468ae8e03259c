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
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/model.hpp"
#include "jtbm/sample.hpp"

namespace jtbm {

struct FfResult {
  double d_stat = 0.0;  // max orthant fraction difference, in [0, 1]
  double scaled = 0.0;  // d_stat · sqrt(n1 n2 / (n1 + n2))
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
};

namespace detail {

// Orthant of x relative to origin o as a bit mask, or -1 if x lies on one of
// the dividing hyperplanes.
inline int orthant(const double* x, const double* o, int d) {
  int mask = 0;
  for (int k = 0; k < d; ++k) {
    if (x[k] > o[k])
      mask |= 1 << k;
    else if (!(x[k] < o[k]))
      return -1;
  }
  return mask;
}

}  // namespace detail

/// Two-sample Fasano-Franceschini statistic for d = 2 or 3. Every pooled
/// point serves as an origin; points on an origin's axes count in no orthant.
inline FfResult ff_two_sample(const Sample& a, const Sample& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("ff_two_sample: samples have different dimensions");
  const int d = static_cast<int>(a.dim());
  if (d != 2 && d != 3) throw InvalidArgument("ff_two_sample: dimension must be 2 or 3, got " + std::to_string(d));
  if (a.size() < 10 || b.size() < 10) throw InvalidArgument("ff_two_sample: need at least 10 points per sample");

  // row-major copies for tight inner loops
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xa = a.data;
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xb = b.data;
  const Eigen::Index na = xa.rows();
  const Eigen::Index nb = xb.rows();
  const double inv_a = 1.0 / double(na);
  const double inv_b = 1.0 / double(nb);

  double best = 0.0;
  auto scan = [&](const double* origin) {
    std::array<std::int64_t, 8> ca{};
    std::array<std::int64_t, 8> cb{};
    for (Eigen::Index i = 0; i < na; ++i) {
      const int m = detail::orthant(xa.row(i).data(), origin, d);
      if (m >= 0) ++ca[m];
    }
    for (Eigen::Index i = 0; i < nb; ++i) {
      const int m = detail::orthant(xb.row(i).data(), origin, d);
      if (m >= 0) ++cb[m];
    }
    for (int m = 0; m < (1 << d); ++m) best = std::max(best, std::fabs(double(ca[m]) * inv_a - double(cb[m]) * inv_b));
  };
  for (Eigen::Index i = 0; i < na; ++i) scan(xa.row(i).data());
  for (Eigen::Index i = 0; i < nb; ++i) scan(xb.row(i).data());

  FfResult r;
  r.d_stat = best;
  r.n1 = na;
  r.n2 = nb;
  r.scaled = best * std::sqrt(double(na) * double(nb) / double(na + nb));
  return r;
}

struct FfSummary {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single repeat
  std::vector<double> values;
};

inline FfSummary summarize(std::vector<double> values) {
  FfSummary s;
  s.values = std::move(values);
  const double n = double(s.values.size());
  for (double v : s.values) s.mean += v;
  s.mean /= n;
  if (s.values.size() > 1) {
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

/// Repeated two-sample test of model draws (same size as the data) against
/// the data. `Density` is anything with sample(n, seed): RtbmDensity or
/// TransformedDensity.
template <class Density>
FfSummary ff_model_vs_data(const Density& model, const Sample& data, int repeats, std::uint64_t seed) {
  if (repeats < 1) throw InvalidArgument("ff_model_vs_data: repeats must be at least 1");
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const Sample draw = model.sample(data.size(), seed + 0x9E3779B97F4A7C15ULL * std::uint64_t(r + 1));
    vals.push_back(ff_two_sample(draw, data).scaled);
  }
  return summarize(std::move(vals));
}

inline FfSummary ff_model_vs_data(const RtbmParams& p, const Sample& data, int repeats, std::uint64_t seed,
                                  const ModelOptions& opt = {}) {
  return ff_model_vs_data(RtbmDensity(p, unnormalized(opt)), data, repeats, seed);
}

}  // namespace jtbm
