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

// Independent reference computations used only by the test suites. Nothing
// here calls into the library's theta kernels or lattice enumeration.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace jtbm::oracle {

/// Raw θ̃, θ̃', θ̃'' by direct summation over |n| ≤ n_max in long double.
struct Theta1dRaw {
  long double value = 0, d1 = 0, d2 = 0;
  long double log_value() const { return std::log(value); }
};

inline Theta1dRaw theta1d(long double z, long double omega, int n_max = 60) {
  Theta1dRaw r;
  for (int n = -n_max; n <= n_max; ++n) {
    const long double t = std::exp(-0.5L * omega * n * n + n * z);
    r.value += t;
    r.d1 += n * t;
    r.d2 += (long double)n * n * t;
  }
  return r;
}

/// Partial sums of the (z_c, τ)-convention series, truncated at 0 < n < B,
/// in long double: S_B, U_B (d/dz_c), V_B (d²/dz_c²). Expressed through the
/// real argument: z_c = z/(2πi), so sin(2πn z_c) = −i sinh(nz) and
/// cos(2πn z_c) = cosh(nz).
struct PaperPartialSums {
  long double s = 1, u_imag = 0, v = 0;  // U_B is purely imaginary for real z
};

inline PaperPartialSums paper_partial_sums(long double z, long double omega, int B) {
  PaperPartialSums p;
  const long double pi = std::numbers::pi_v<long double>;
  for (int n = 1; n < B; ++n) {
    const long double qn2 = std::exp(-0.5L * omega * n * n);
    p.s += 2 * qn2 * std::cosh(n * z);
    // −4πn q^{n²} sin(2πn z_c) = −4πn q^{n²} (−i sinh(nz)) = i·4πn q^{n²} sinh(nz)
    p.u_imag += 4 * pi * n * qn2 * std::sinh(n * z);
    p.v += -8 * pi * pi * n * n * qn2 * std::cosh(n * z);
  }
  return p;
}

/// Exact (z_c, τ)-convention values θ, dθ/dz_c, d²θ/dz_c² via the real sums.
inline PaperPartialSums paper_exact(long double z, long double omega) {
  const Theta1dRaw r = theta1d(z, omega, 80);
  const long double pi = std::numbers::pi_v<long double>;
  PaperPartialSums p;
  p.s = r.value;
  // d/dz_c = 2πi d/dz
  p.u_imag = 2 * pi * r.d1;
  p.v = -4 * pi * pi * r.d2;
  return p;
}

/// Tails Σ_{n ≥ B} of the three series, summed directly (not as exact minus
/// partial), in the (z_c, τ) convention: |θ − S_B|, |θ′ − U_B|, |θ″ − V_B|.
struct PaperTails {
  long double value = 0, d1 = 0, d2 = 0;
};

inline PaperTails paper_tails(long double z, long double omega, int B, int extra = 60) {
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0, u = 0, v = 0;
  for (int n = std::max(B, 1); n < std::max(B, 1) + extra; ++n) {
    const long double qn2 = std::exp(-0.5L * omega * n * n);
    s += 2 * qn2 * std::cosh(n * z);
    u += 4 * pi * n * qn2 * std::sinh(n * z);
    v += 8 * pi * pi * n * n * qn2 * std::cosh(n * z);
  }
  return {std::fabs(s), std::fabs(u), std::fabs(v)};
}

/// Brute-force N-dimensional θ̃ with normalized gradient and Hessian over the
/// box |n_i − round(c_i)| ≤ half_width, c = Ω⁻¹z.
struct RthetaRaw {
  double log_value = 0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

inline RthetaRaw rtheta(const Eigen::VectorXd& z, const Eigen::MatrixXd& omega, int half_width = 10) {
  const int d = static_cast<int>(z.size());
  const Eigen::VectorXd c = omega.ldlt().solve(z);
  std::vector<long double> expo;
  std::vector<Eigen::VectorXd> pts;
  std::vector<int> idx(d, -half_width);
  long double best = -1e300L;
  for (;;) {
    Eigen::VectorXd n(d);
    for (int i = 0; i < d; ++i) n(i) = std::round(c(i)) + idx[i];
    long double e = 0;
    for (int i = 0; i < d; ++i) {
      e += (long double)n(i) * z(i);
      for (int j = 0; j < d; ++j) e -= 0.5L * n(i) * omega(i, j) * n(j);
    }
    expo.push_back(e);
    pts.push_back(n);
    if (e > best) best = e;
    int k = 0;
    while (k < d && ++idx[k] > half_width) idx[k++] = -half_width;
    if (k == d) break;
  }
  long double tot = 0;
  std::vector<long double> g(d, 0), h(d * d, 0);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const long double w = std::exp(expo[p] - best);
    tot += w;
    for (int i = 0; i < d; ++i) {
      g[i] += w * pts[p](i);
      for (int j = 0; j < d; ++j) h[i * d + j] += w * pts[p](i) * pts[p](j);
    }
  }
  RthetaRaw r;
  r.log_value = double(best + std::log(tot));
  r.grad.resize(d);
  r.hess.resize(d, d);
  for (int i = 0; i < d; ++i) {
    r.grad(i) = double(g[i] / tot);
    for (int j = 0; j < d; ++j) r.hess(i, j) = double(h[i * d + j] / tot);
  }
  return r;
}

/// Central first and second differences of a scalar function of a vector.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double rel_step = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::fmax(1.0, std::fabs(x(i)));
    Eigen::VectorXd a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

inline Eigen::VectorXd fd_second(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                 double rel_step = 1e-4) {
  Eigen::VectorXd g(x.size());
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::fmax(1.0, std::fabs(x(i)));
    Eigen::VectorXd a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - 2 * f0 + f(b)) / (h * h);
  }
  return g;
}

/// Five-point stencil for the gradient, O(h⁴).
inline Eigen::VectorXd fd_gradient5(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                    double rel_step = 1e-3) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::fmax(1.0, std::fabs(x(i)));
    auto at = [&](double s) {
      Eigen::VectorXd y = x;
      y(i) += s * h;
      return f(y);
    };
    g(i) = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
  }
  return g;
}

/// Five-point stencil for the diagonal second derivatives, O(h⁴).
inline Eigen::VectorXd fd_second5(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                  double rel_step = 1e-2) {
  Eigen::VectorXd g(x.size());
  const double f0 = f(x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::fmax(1.0, std::fabs(x(i)));
    auto at = [&](double s) {
      Eigen::VectorXd y = x;
      y(i) += s * h;
      return f(y);
    };
    g(i) = (-at(2) + 16 * at(1) - 30 * f0 + 16 * at(-1) - at(-2)) / (12 * h * h);
  }
  return g;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Tensor-product Simpson rule on a rectangle.
inline double simpson2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                        int panels) {
  return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, ay, by, panels); }, ax, bx, panels);
}

}  // namespace jtbm::oracle
