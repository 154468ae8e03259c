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
 * \file serialize.hpp
 *
 * JSON documents. A model file holds, in this order:
 *
 *   n_v, n_h, diagonal_q,
 *   t_lower        lower triangle of T, row-major
 *   q              diagonal of Q (pJTBM) or its lower triangle, row-major
 *   w              W (N_v × N_h), row-major
 *   b_v, b_h
 *   preprocessing  { linear (rows), offset, log_abs_det }
 *
 * plus any extra top-level keys (e.g. run_config) supplied by the caller.
 */

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "jtbm/errors.hpp"
#include "jtbm/gof.hpp"
#include "jtbm/model.hpp"
#include "jtbm/optimize.hpp"
#include "jtbm/preprocess.hpp"

namespace jtbm {

using Json = nlohmann::ordered_json;

inline Json to_json(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

inline Eigen::VectorXd vector_from_json(const Json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Json to_json(const AffineMap& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.linear().rows(); ++i) rows.push_back(to_json(Eigen::VectorXd(m.linear().row(i).transpose())));
  return Json{{"linear", rows}, {"offset", to_json(m.offset())}, {"log_abs_det", m.log_abs_det()}};
}

inline AffineMap affine_from_json(const Json& j) {
  const Json& rows = j.at("linear");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd lin(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd r = vector_from_json(rows.at(static_cast<std::size_t>(i)));
    if (r.size() != n) throw InvalidArgument("preprocessing.linear must be square");
    lin.row(i) = r.transpose();
  }
  return AffineMap(lin, vector_from_json(j.at("offset")));
}

inline Json to_json(const RtbmParams& p) {
  const ParamLayout lay = ParamLayout::of(p);
  const Eigen::VectorXd x = pack(p);
  const Eigen::Index nt = lay.n_v * (lay.n_v + 1) / 2;
  const Eigen::Index nq = lay.diagonal_q ? lay.n_h : lay.n_h * (lay.n_h + 1) / 2;
  const Eigen::Index nw = lay.n_v * lay.n_h;
  Eigen::Index k = 0;
  auto take = [&](Eigen::Index len) {
    Json out = to_json(Eigen::VectorXd(x.segment(k, len)));
    k += len;
    return out;
  };
  Json j;
  j["n_v"] = lay.n_v;
  j["n_h"] = lay.n_h;
  j["diagonal_q"] = lay.diagonal_q;
  j["t_lower"] = take(nt);
  j["q"] = take(nq);
  j["w"] = take(nw);
  j["b_v"] = take(lay.n_v);
  j["b_h"] = take(lay.n_h);
  return j;
}

inline RtbmParams params_from_json(const Json& j) {
  ParamLayout lay;
  lay.n_v = j.at("n_v").get<Eigen::Index>();
  lay.n_h = j.at("n_h").get<Eigen::Index>();
  lay.diagonal_q = j.at("diagonal_q").get<bool>();
  if (lay.n_v < 1 || lay.n_h < 1) throw InvalidArgument("model file: n_v and n_h must be positive");
  std::vector<double> flat;
  for (const char* key : {"t_lower", "q", "w", "b_v", "b_h"}) {
    const auto part = j.at(key).get<std::vector<double>>();
    flat.insert(flat.end(), part.begin(), part.end());
  }
  return unpack(Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size())), lay);
}

/// A trained model together with the map taking raw data to model space.
struct ModelFile {
  RtbmParams params;
  AffineMap preprocessing;
  Json extra = Json::object();
};

inline Json to_json(const ModelFile& m) {
  Json j = to_json(m.params);
  j["preprocessing"] = to_json(m.preprocessing);
  for (const auto& [k, v] : m.extra.items()) j[k] = v;
  return j;
}

inline ModelFile model_from_json(const Json& j) {
  ModelFile m;
  m.params = params_from_json(j);
  m.preprocessing = j.contains("preprocessing") ? affine_from_json(j.at("preprocessing"))
                                                : AffineMap::identity(m.params.n_v());
  if (m.preprocessing.dim() != m.params.n_v()) throw InvalidArgument("model file: preprocessing dimension mismatch");
  for (const auto& [k, v] : j.items())
    if (k == "run_config" || k == "source") m.extra[k] = v;
  return m;
}

inline Json to_json(const FitReport& r) {
  return Json{{"best_params", to_json(r.best_params)},
              {"initial_params", to_json(r.initial_params)},
              {"best_cost", r.best_cost},
              {"cost_trace", r.cost_trace},
              {"wall_seconds", r.wall_seconds},
              {"evaluations", r.evaluations},
              {"iterations", r.iterations}};
}

inline Json to_json(const FfSummary& s) { return Json{{"mean", s.mean}, {"std", s.std}, {"values", s.values}}; }

inline void write_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
}

}  // namespace jtbm
