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
 * \file model.hpp
 *
 * Riemann-Theta Boltzmann machine with energy
 *
 *     E(v, h) = ½ hᵀQh + ½ vᵀTv + vᵀWh + B_hᵀh + B_vᵀv,   h ∈ Z^{N_h}, v ∈ R^{N_v}
 *
 * (W is N_v × N_h). Summing out the hidden lattice gives the visible density
 *
 *     P(v) = sqrt(det T / (2π)^{N_v}) exp(−½ (v + T⁻¹B_v)ᵀ T (v + T⁻¹B_v))
 *            · θ̃(B_h + Wᵀv | Q) / θ̃(B_h − WᵀT⁻¹B_v | Q − WᵀT⁻¹W).
 *
 * With u = B_h + Wᵀv, D = ∇θ̃(u)/θ̃(u) and H = ∇∇ᵀθ̃(u)/θ̃(u):
 *
 *     ∂_i log P  = −(Tv)_i − (B_v)_i + (WD)_i
 *     ∂²_i log P = −T_ii + (WHWᵀ)_ii − (WD)_i²
 *
 * For diagonal Q (the product Jacobi-Theta machine) the numerator factorizes
 * and both reduce to sums over scalar log-derivatives of θ̃(u_j | Q_jj).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jtbm/errors.hpp"
#include "jtbm/lattice.hpp"
#include "jtbm/preprocess.hpp"
#include "jtbm/rtheta.hpp"
#include "jtbm/sample.hpp"
#include "jtbm/theta1d.hpp"

namespace jtbm {

/// Parameter block of an RTBM. When diagonal_q() the hidden coupling is
/// held as a vector and has no off-diagonal entries.
class RtbmParams {
 public:
  RtbmParams() = default;

  /// Product Jacobi-Theta machine (diagonal Q).
  static RtbmParams pjtbm(Eigen::MatrixXd t, Eigen::VectorXd q_diag, Eigen::MatrixXd w, Eigen::VectorXd b_v,
                          Eigen::VectorXd b_h) {
    RtbmParams p;
    p.diagonal_q_ = true;
    p.q_diag_ = std::move(q_diag);
    p.t_ = std::move(t);
    p.w_ = std::move(w);
    p.b_v_ = std::move(b_v);
    p.b_h_ = std::move(b_h);
    p.check_shapes();
    return p;
  }

  /// General machine with full symmetric Q.
  static RtbmParams rtbm(Eigen::MatrixXd t, Eigen::MatrixXd q, Eigen::MatrixXd w, Eigen::VectorXd b_v,
                         Eigen::VectorXd b_h) {
    RtbmParams p;
    p.diagonal_q_ = false;
    p.q_full_ = std::move(q);
    p.t_ = std::move(t);
    p.w_ = std::move(w);
    p.b_v_ = std::move(b_v);
    p.b_h_ = std::move(b_h);
    p.check_shapes();
    return p;
  }

  Eigen::Index n_v() const { return t_.rows(); }
  Eigen::Index n_h() const { return b_h_.size(); }
  bool diagonal_q() const { return diagonal_q_; }

  const Eigen::MatrixXd& t() const { return t_; }
  const Eigen::MatrixXd& w() const { return w_; }
  const Eigen::VectorXd& b_v() const { return b_v_; }
  const Eigen::VectorXd& b_h() const { return b_h_; }

  /// Dense Q in either storage.
  Eigen::MatrixXd q() const { return diagonal_q_ ? Eigen::MatrixXd(q_diag_.asDiagonal()) : q_full_; }

  const Eigen::VectorXd& q_diagonal() const {
    if (!diagonal_q_) throw ContractViolation("q_diagonal: model has a full Q");
    return q_diag_;
  }

  RtbmParams with_w(Eigen::MatrixXd w) const {
    RtbmParams p = *this;
    p.w_ = std::move(w);
    p.check_shapes();
    return p;
  }

 private:
  void check_shapes() const {
    const Eigen::Index nv = t_.rows();
    const Eigen::Index nh = b_h_.size();
    if (nv < 1) throw InvalidArgument("RtbmParams: need at least one visible unit");
    if (t_.cols() != nv) throw InvalidArgument("RtbmParams: T must be square");
    if (b_v_.size() != nv) throw InvalidArgument("RtbmParams: B_v must have N_v entries");
    if (w_.rows() != nv || w_.cols() != nh) throw InvalidArgument("RtbmParams: W must be N_v x N_h");
    if (diagonal_q_ ? q_diag_.size() != nh : (q_full_.rows() != nh || q_full_.cols() != nh))
      throw InvalidArgument("RtbmParams: Q must be N_h x N_h");
  }

  Eigen::MatrixXd t_;
  Eigen::VectorXd q_diag_;
  Eigen::MatrixXd q_full_;
  Eigen::MatrixXd w_;
  Eigen::VectorXd b_v_;
  Eigen::VectorXd b_h_;
  bool diagonal_q_ = true;
};

// -------------------------------------------------------------- packing

/// Number of free parameters: lower triangle of T, diagonal or lower
/// triangle of Q, all of W, both biases.
inline std::int64_t count_params(std::int64_t n_v, std::int64_t n_h, bool diagonal_q) {
  if (n_v < 1 || n_h < 1) throw InvalidArgument("count_params: N_v and N_h must be at least 1");
  return n_v * (n_v + 1) / 2 + n_v + n_v * n_h + n_h + (diagonal_q ? n_h : n_h * (n_h + 1) / 2);
}

struct ParamLayout {
  Eigen::Index n_v = 1;
  Eigen::Index n_h = 1;
  bool diagonal_q = true;

  Eigen::Index size() const {
    return n_v * (n_v + 1) / 2 + (diagonal_q ? n_h : n_h * (n_h + 1) / 2) + n_v * n_h + n_v + n_h;
  }
  static ParamLayout of(const RtbmParams& p) { return {p.n_v(), p.n_h(), p.diagonal_q()}; }
};

/// Flattens in the order: T lower triangle (row-major), Q diagonal or lower
/// triangle, W row-major, B_v, B_h.
inline Eigen::VectorXd pack(const RtbmParams& p) {
  const ParamLayout lay = ParamLayout::of(p);
  Eigen::VectorXd x(lay.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < lay.n_v; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) x(k++) = p.t()(i, j);
  if (p.diagonal_q()) {
    for (Eigen::Index i = 0; i < lay.n_h; ++i) x(k++) = p.q_diagonal()(i);
  } else {
    const Eigen::MatrixXd q = p.q();
    for (Eigen::Index i = 0; i < lay.n_h; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) x(k++) = q(i, j);
  }
  for (Eigen::Index i = 0; i < lay.n_v; ++i)
    for (Eigen::Index j = 0; j < lay.n_h; ++j) x(k++) = p.w()(i, j);
  for (Eigen::Index i = 0; i < lay.n_v; ++i) x(k++) = p.b_v()(i);
  for (Eigen::Index i = 0; i < lay.n_h; ++i) x(k++) = p.b_h()(i);
  return x;
}

inline RtbmParams unpack(const Eigen::VectorXd& x, const ParamLayout& lay) {
  if (x.size() != lay.size())
    throw InvalidArgument("unpack: expected " + std::to_string(lay.size()) + " parameters, got " +
                          std::to_string(x.size()));
  Eigen::Index k = 0;
  Eigen::MatrixXd t(lay.n_v, lay.n_v);
  for (Eigen::Index i = 0; i < lay.n_v; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) t(i, j) = t(j, i) = x(k++);
  Eigen::VectorXd qd;
  Eigen::MatrixXd q;
  if (lay.diagonal_q) {
    qd = x.segment(k, lay.n_h);
    k += lay.n_h;
  } else {
    q.resize(lay.n_h, lay.n_h);
    for (Eigen::Index i = 0; i < lay.n_h; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) q(i, j) = q(j, i) = x(k++);
  }
  Eigen::MatrixXd w(lay.n_v, lay.n_h);
  for (Eigen::Index i = 0; i < lay.n_v; ++i)
    for (Eigen::Index j = 0; j < lay.n_h; ++j) w(i, j) = x(k++);
  Eigen::VectorXd b_v = x.segment(k, lay.n_v);
  k += lay.n_v;
  Eigen::VectorXd b_h = x.segment(k, lay.n_h);
  if (lay.diagonal_q) return RtbmParams::pjtbm(std::move(t), std::move(qd), std::move(w), std::move(b_v), std::move(b_h));
  return RtbmParams::rtbm(std::move(t), std::move(q), std::move(w), std::move(b_v), std::move(b_h));
}

// ---------------------------------------------------------- feasibility

enum class Feasibility { Feasible, TNotPositive, QNotPositive, SchurNotPositive, NonFinite };

inline const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::TNotPositive: return "T is not positive-definite";
    case Feasibility::QNotPositive: return "Q is not positive-definite";
    case Feasibility::SchurNotPositive: return "Q - W^T T^-1 W is not positive-definite";
    case Feasibility::NonFinite: return "non-finite parameters";
  }
  return "?";
}

/// Q − WᵀT⁻¹W, the hidden coupling of the normalizing theta.
inline Eigen::MatrixXd schur_complement(const RtbmParams& p, const Eigen::LLT<Eigen::MatrixXd>& t_llt) {
  const Eigen::MatrixXd lw = t_llt.matrixL().solve(p.w());  // L⁻¹W
  Eigen::MatrixXd s = p.q() - lw.transpose() * lw;
  return 0.5 * (s + s.transpose());
}

/// Cholesky-based check of T ≻ 0, Q ≻ 0 and Q − WᵀT⁻¹W ≻ 0.
inline Feasibility check_feasibility(const RtbmParams& p) {
  const bool finite = p.t().allFinite() && p.w().allFinite() && p.b_v().allFinite() && p.b_h().allFinite() &&
                      (p.diagonal_q() ? p.q_diagonal().allFinite() : p.q().allFinite());
  if (!finite) return Feasibility::NonFinite;
  Eigen::LLT<Eigen::MatrixXd> t_llt(p.t());
  if (t_llt.info() != Eigen::Success) return Feasibility::TNotPositive;
  if (p.diagonal_q()) {
    if ((p.q_diagonal().array() <= 0.0).any()) return Feasibility::QNotPositive;
  } else if (Eigen::LLT<Eigen::MatrixXd>(p.q()).info() != Eigen::Success) {
    return Feasibility::QNotPositive;
  }
  if (Eigen::LLT<Eigen::MatrixXd>(schur_complement(p, t_llt)).info() != Eigen::Success)
    return Feasibility::SchurNotPositive;
  return Feasibility::Feasible;
}

inline bool is_feasible(const RtbmParams& p) { return check_feasibility(p) == Feasibility::Feasible; }

// --------------------------------------------------------------- energy

inline double energy(const RtbmParams& p, const Eigen::VectorXd& v, const Eigen::VectorXi& h) {
  if (v.size() != p.n_v() || h.size() != p.n_h()) throw InvalidArgument("energy: dimension mismatch");
  const Eigen::VectorXd hd = h.cast<double>();
  return 0.5 * hd.dot(p.q() * hd) + 0.5 * v.dot(p.t() * v) + v.dot(p.w() * hd) + p.b_h().dot(hd) + p.b_v().dot(v);
}

// -------------------------------------------------------------- density

/// Route for the numerator theta θ̃(B_h + Wᵀv | Q).
enum class ThetaPath { Auto, Full, Factorized };

struct ModelOptions {
  ThetaPath path = ThetaPath::Auto;
  double theta_eps = kDefaultThetaEps;  // one-dimensional kernel
  RtOptions lattice{};                  // full Riemann-Theta evaluations
  bool normalize = true;                // evaluate the denominator theta
};

struct ScoreLaplacian {
  Eigen::VectorXd score;
  Eigen::VectorXd laplacian;  // per-coordinate ∂²_i log P
};

/// Visible-sector density of a feasible parameter block with the
/// v-independent pieces (Cholesky of T, normalizing theta) computed once.
class RtbmDensity {
 public:
  explicit RtbmDensity(RtbmParams p, ModelOptions opt = {}) : p_(std::move(p)), opt_(opt) {
    const Feasibility f = check_feasibility(p_);
    if (f != Feasibility::Feasible) throw DomainError(std::string("infeasible RTBM parameters: ") + to_string(f));
    if (opt_.path == ThetaPath::Factorized && !p_.diagonal_q())
      throw ContractViolation("factorized theta path requires diagonal Q");
    t_llt_.compute(p_.t());
    const Eigen::MatrixXd l = t_llt_.matrixL();
    log_det_t_ = 2.0 * l.diagonal().array().log().sum();
    t_inv_b_v_ = t_llt_.solve(p_.b_v());
    if (opt_.normalize) log_normalizer_ = compute_log_normalizer();
  }

  const RtbmParams& params() const { return p_; }
  const ModelOptions& options() const { return opt_; }

  bool factorized() const {
    return opt_.path == ThetaPath::Factorized || (opt_.path == ThetaPath::Auto && p_.diagonal_q());
  }

  /// log θ̃(B_h − WᵀT⁻¹B_v | Q − WᵀT⁻¹W).
  double log_normalizer() const {
    if (!log_normalizer_) throw ContractViolation("log_normalizer: density was built without normalization");
    return *log_normalizer_;
  }

  /// Numerator theta evaluated along the configured route.
  RtEval numerator(const Eigen::VectorXd& v, Derivatives d) const {
    check_dim(v);
    const Eigen::VectorXd u = p_.b_h() + p_.w().transpose() * v;
    if (factorized()) return rt_eval_factorized(u, p_.q_diagonal(), opt_.theta_eps, d);
    RtOptions o = opt_.lattice;
    o.derivatives = d;
    return rt_eval_full(u, p_.q(), o);
  }

  double log_density(const Eigen::VectorXd& v) const {
    const RtEval num = numerator(v, Derivatives::None);
    const Eigen::VectorXd m = v + t_inv_b_v_;
    const double quad = m.dot(p_.t() * m);
    return 0.5 * log_det_t_ - 0.5 * double(p_.n_v()) * std::log(2.0 * std::numbers::pi) - 0.5 * quad +
           num.log_value - log_normalizer();
  }

  Eigen::VectorXd score(const Eigen::VectorXd& v) const {
    if (factorized()) return score_laplacian_factorized(v).score;
    const RtEval num = numerator(v, Derivatives::Gradient);
    return gaussian_score(v) + p_.w() * num.grad_norm;
  }

  Eigen::VectorXd laplacian_terms(const Eigen::VectorXd& v) const { return score_laplacian(v).laplacian; }

  ScoreLaplacian score_laplacian(const Eigen::VectorXd& v) const {
    if (factorized()) return score_laplacian_factorized(v);
    const RtEval num = numerator(v, Derivatives::Hessian);
    ScoreLaplacian out;
    const Eigen::VectorXd wd = p_.w() * num.grad_norm;
    out.score = gaussian_score(v) + wd;
    const Eigen::MatrixXd wh = p_.w() * num.hess_norm;
    out.laplacian.resize(p_.n_v());
    for (Eigen::Index i = 0; i < p_.n_v(); ++i)
      out.laplacian(i) = -p_.t()(i, i) + wh.row(i).dot(p_.w().row(i)) - wd(i) * wd(i);
    return out;
  }

  /// Product route: score_i = −(Tv)_i − B_v,i + Σ_j dlog_j W_ij,
  /// laplacian_i = −T_ii + Σ_j d2log_j W_ij². O(N_v·N_h) after N_h scalar
  /// theta evaluations.
  ScoreLaplacian score_laplacian_factorized(const Eigen::VectorXd& v) const {
    if (!p_.diagonal_q()) throw ContractViolation("score_factorized: requires diagonal Q");
    check_dim(v);
    const Eigen::Index nv = p_.n_v();
    const Eigen::Index nh = p_.n_h();
    const Eigen::VectorXd u = p_.b_h() + p_.w().transpose() * v;
    ScoreLaplacian out;
    out.score = gaussian_score(v);
    out.laplacian = -p_.t().diagonal();
    const Eigen::VectorXd& qd = p_.q_diagonal();
    for (Eigen::Index j = 0; j < nh; ++j) {
      const ThetaEval e = theta_tilde(u(j), qd(j), opt_.theta_eps);
      for (Eigen::Index i = 0; i < nv; ++i) {
        const double wij = p_.w()(i, j);
        out.score(i) += e.dlog * wij;
        out.laplacian(i) += e.d2log * wij * wij;
      }
    }
    return out;
  }

  /// Draws hidden states from the normalizing lattice distribution, then
  /// v | h ~ N(−T⁻¹(Wh + B_v), T⁻¹).
  Sample sample(Eigen::Index n, std::mt19937_64& rng) const {
    if (n < 1) throw InvalidArgument("sample: n must be at least 1");
    const HiddenTable table = hidden_table();
    std::uniform_real_distribution<double> unif(0.0, table.cumulative.back());
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::MatrixXd lt = t_llt_.matrixU();  // T = LLᵀ, Lᵀ upper
    Eigen::MatrixXd out(n, p_.n_v());
    Eigen::VectorXd xi(p_.n_v());
    for (Eigen::Index r = 0; r < n; ++r) {
      const double u = unif(rng);
      auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), u);
      const auto idx = static_cast<Eigen::Index>(
          std::min<std::ptrdiff_t>(it - table.cumulative.begin(), std::ptrdiff_t(table.cumulative.size()) - 1));
      for (Eigen::Index i = 0; i < p_.n_v(); ++i) xi(i) = gauss(rng);
      // Lᵀ x = ξ gives x with covariance T⁻¹
      const Eigen::VectorXd noise = lt.triangularView<Eigen::Upper>().solve(xi);
      out.row(r) = (table.means.col(idx) + noise).transpose();
    }
    return Sample(std::move(out), "rtbm-sample");
  }

  Sample sample(Eigen::Index n, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return sample(n, rng);
  }

  /// Truncated hidden-state distribution: lattice points, their
  /// probabilities and the conditional means of v.
  struct HiddenTable {
    Eigen::MatrixXd states;  // N_h × K
    Eigen::VectorXd probability;
    Eigen::MatrixXd means;  // N_v × K
    std::vector<double> cumulative;
  };

  HiddenTable hidden_table() const {
    // P(h) ∝ exp(−½ hᵀ(Q − WᵀT⁻¹W)h − hᵀ(B_h − WᵀT⁻¹B_v))
    const Eigen::MatrixXd schur = schur_complement(p_, t_llt_);
    const Eigen::VectorXd z = -(p_.b_h() - p_.w().transpose() * t_inv_b_v_);
    const TruncationRegion reg = truncation_region(z, schur, opt_.lattice.eps);
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> wts;
    enumerate_ellipsoid(reg.r, reg.centre, reg.radius2, opt_.lattice.point_budget,
                        [&](const Eigen::VectorXd& h, double d2) {
                          pts.push_back(h);
                          wts.push_back(std::exp(-0.5 * d2));
                        });
    if (pts.empty()) throw ResourceError("sample: hidden truncation region is empty");
    HiddenTable t;
    const auto k = static_cast<Eigen::Index>(pts.size());
    t.states.resize(p_.n_h(), k);
    t.probability.resize(k);
    t.cumulative.resize(pts.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      t.states.col(i) = pts[i];
      total += wts[i];
      t.cumulative[i] = total;
    }
    for (Eigen::Index i = 0; i < k; ++i) t.probability(i) = wts[i] / total;
    t.means = -t_llt_.solve(p_.w() * t.states + p_.b_v().replicate(1, k));
    return t;
  }

 private:
  void check_dim(const Eigen::VectorXd& v) const {
    if (v.size() != p_.n_v()) throw InvalidArgument("visible vector has wrong dimension");
  }

  Eigen::VectorXd gaussian_score(const Eigen::VectorXd& v) const { return -(p_.t() * v) - p_.b_v(); }

  double compute_log_normalizer() const {
    const Eigen::MatrixXd schur = schur_complement(p_, t_llt_);
    const Eigen::VectorXd z = p_.b_h() - p_.w().transpose() * t_inv_b_v_;
    RtOptions o = opt_.lattice;
    o.derivatives = Derivatives::None;
    return rt_eval_full(z, schur, o).log_value;
  }

  RtbmParams p_;
  ModelOptions opt_;
  Eigen::LLT<Eigen::MatrixXd> t_llt_;
  double log_det_t_ = 0.0;
  Eigen::VectorXd t_inv_b_v_;
  std::optional<double> log_normalizer_;
};

// ----------------------------------------------------- free-function API

inline double log_density(const RtbmParams& p, const Eigen::VectorXd& v, const ModelOptions& opt = {}) {
  return RtbmDensity(p, opt).log_density(v);
}

inline ModelOptions unnormalized(ModelOptions opt) {
  opt.normalize = false;
  return opt;
}

inline Eigen::VectorXd score(const RtbmParams& p, const Eigen::VectorXd& v, const ModelOptions& opt = {}) {
  return RtbmDensity(p, unnormalized(opt)).score(v);
}

inline Eigen::VectorXd laplacian_terms(const RtbmParams& p, const Eigen::VectorXd& v, const ModelOptions& opt = {}) {
  return RtbmDensity(p, unnormalized(opt)).laplacian_terms(v);
}

inline Eigen::VectorXd score_factorized(const RtbmParams& p, const Eigen::VectorXd& v, const ModelOptions& opt = {}) {
  if (!p.diagonal_q()) throw ContractViolation("score_factorized: requires diagonal Q");
  return RtbmDensity(p, unnormalized(opt)).score_laplacian_factorized(v).score;
}

inline Eigen::VectorXd laplacian_factorized(const RtbmParams& p, const Eigen::VectorXd& v,
                                            const ModelOptions& opt = {}) {
  if (!p.diagonal_q()) throw ContractViolation("laplacian_factorized: requires diagonal Q");
  return RtbmDensity(p, unnormalized(opt)).score_laplacian_factorized(v).laplacian;
}

inline Sample sample(const RtbmParams& p, Eigen::Index n, std::uint64_t seed, const ModelOptions& opt = {}) {
  return RtbmDensity(p, unnormalized(opt)).sample(n, seed);
}

// ---------------------------------------------------- affine transforms

/// Density of y = map(v) for v drawn from an RTBM:
/// log p_y(y) = log P(map⁻¹(y)) − log|det map|.
class TransformedDensity {
 public:
  TransformedDensity(RtbmDensity base, AffineMap map)
      : base_(std::move(base)), map_(std::move(map)), inverse_(map_.inverse()) {
    if (map_.dim() != base_.params().n_v()) throw InvalidArgument("affine_pushforward: map dimension mismatch");
  }

  double log_density(const Eigen::VectorXd& y) const { return base_.log_density(inverse_(y)) - map_.log_abs_det(); }

  Sample sample(Eigen::Index n, std::uint64_t seed) const {
    Sample s = apply(map_, base_.sample(n, seed));
    s.source = "rtbm-sample(pushed)";
    return s;
  }

  const RtbmDensity& base() const { return base_; }
  const AffineMap& map() const { return map_; }

 private:
  RtbmDensity base_;
  AffineMap map_;
  AffineMap inverse_;
};

inline TransformedDensity affine_pushforward(const RtbmParams& p, const AffineMap& map, const ModelOptions& opt = {}) {
  return TransformedDensity(RtbmDensity(p, opt), map);
}

}  // namespace jtbm
