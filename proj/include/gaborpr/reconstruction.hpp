// gaborpr/reconstruction.hpp

// Copyright 2026 The gaborpr Authors
//
// See ../../LICENSE for clarification regarding multiple authors
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

#ifndef GABORPR_RECONSTRUCTION_HPP_
#define GABORPR_RECONSTRUCTION_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gaborpr/errors.hpp"
#include "gaborpr/parallel.hpp"
#include "gaborpr/sampling.hpp"
#include "gaborpr/signal.hpp"
#include "gaborpr/special_functions.hpp"

namespace gaborpr {

/// Points p_1 < ... < p_J with |f(p_j)| >= gamma and gaps at most r.
struct Partition {
  std::vector<double> points;
  double gamma = 0.0;
  double r = 0.0;

  Partition() = default;
  Partition(std::vector<double> p, double gamma_, double r_)
      : points(std::move(p)), gamma(gamma_), r(r_) {
    if (points.size() < 2) throw ArgumentError("Partition: need at least two points");
    if (!(r > 0.0)) throw ArgumentError("Partition: r must be positive");
    for (std::size_t j = 0; j + 1 < points.size(); ++j) {
      double gap = points[j + 1] - points[j];
      if (!(gap > 0.0)) throw ArgumentError("Partition: points must increase strictly");
      if (gap > r * (1.0 + 1e-12)) throw ArgumentError("Partition: gap exceeds r");
    }
  }
  std::size_t J() const { return points.size(); }
  double max_gap() const {
    double g = 0.0;
    for (std::size_t j = 0; j + 1 < points.size(); ++j)
      g = std::max(g, points[j + 1] - points[j]);
    return g;
  }
};

/// Provider of the two quantities the routine consumes: the modulus square
/// estimate c(p) and S(p, omega), an estimate of f_omega(p + omega).
class LocalSource {
 public:
  virtual ~LocalSource() = default;
  virtual double modulus_sq(double p) const = 0;
  virtual cplx S(double p, double omega) const = 0;
  virtual GaussianModel model() const = 0;
  virtual std::string name() const = 0;
};

/// Estimates from a sample matrix:
///   c(p)       = h sum_n (sum_k S(n,k)) T_{beta n/2} dual_0(p),
///   S(p, w)    = h sum_n sum_k S(n,k) e^{-2 pi i w h k} T_{beta n/2} dual_w(p + w).
class SampleSource : public LocalSource {
 public:
  SampleSource(SampleMatrix S, DualGeneratorTable table)
      : S_(std::move(S)), tb_(std::move(table)), m_(S_.model()) {
    check_table();
    const Grid &g = S_.grid;
    rowsum_.assign(static_cast<std::size_t>(g.rows()), 0.0);
    for (long n = -g.N; n <= g.N; ++n) {
      double s = 0.0;
      for (long k = -g.H; k <= g.H; ++k) s += S_.at(n, k);
      rowsum_[static_cast<std::size_t>(n + g.N)] = s;
    }
  }
  explicit SampleSource(SampleMatrix S)
      : SampleSource(S, tensor_dual_table(S.model())) {}

  double modulus_sq(double p) const override {
    const Grid &g = S_.grid;
    double s = 0.0;
    for (long n = -g.N; n <= g.N; ++n) {
      double w = dual_eval(tb_, p - g.x(n));
      if (w != 0.0) s += rowsum_[static_cast<std::size_t>(n + g.N)] * w;
    }
    return g.h * s;
  }

  cplx S(double p, double omega) const override {
    if (omega == 0.0) return modulus_sq(p);
    const Grid &g = S_.grid;
    const long cols = g.cols();
    std::vector<cplx> ph(static_cast<std::size_t>(cols));
    for (long k = -g.H; k <= g.H; ++k)
      ph[static_cast<std::size_t>(k + g.H)] = std::polar(1.0, -2.0 * kPi * omega * g.h * k);
    const double amp = std::exp(omega * omega / (4.0 * m_.sigma * m_.sigma));
    cplx total = 0.0;
    for (long n = -g.N; n <= g.N; ++n) {
      double w = dual_eval(tb_, p + 0.5 * omega - g.x(n));
      if (w == 0.0) continue;
      const double *row = &S_.values[static_cast<std::size_t>((n + g.N) * cols)];
      double re = 0.0, im = 0.0;
      for (long k = 0; k < cols; ++k) {
        re += row[k] * ph[static_cast<std::size_t>(k)].real();
        im += row[k] * ph[static_cast<std::size_t>(k)].imag();
      }
      total += w * cplx(re, im);
    }
    return g.h * amp * total;
  }

  GaussianModel model() const override { return m_; }
  std::string name() const override { return "samples"; }
  const SampleMatrix &samples() const { return S_; }
  const DualGeneratorTable &table() const { return tb_; }
  const std::vector<double> &row_sums() const { return rowsum_; }

 private:
  void check_table() const {
    double sg = m_.sigma / std::sqrt(2.0), bg = m_.beta / 2.0;
    if (std::abs(tb_.sigma_g - sg) > 1e-12 * sg || std::abs(tb_.beta_g - bg) > 1e-12 * bg)
      throw ArgumentError("SampleSource: table is not the tensor table of the sample model");
  }

  SampleMatrix S_;
  DualGeneratorTable tb_;
  GaussianModel m_;
  std::vector<double> rowsum_;
};

/// Exact tensor values from a known signal: S(p, w) = f_w(p + w) through the
/// coefficient expansion sum_l d_l phi_w(t - beta l / 2).
class ExactTensorSource : public LocalSource {
 public:
  explicit ExactTensorSource(SIVSignal f) : f_(std::move(f)) {}
  double modulus_sq(double p) const override {
    return tensor_expand_eval(tensor_coeffs(f_, 0.0), f_.model(), p).real();
  }
  cplx S(double p, double omega) const override {
    return tensor_expand_eval(tensor_coeffs(f_, omega), f_.model(), p + omega);
  }
  GaussianModel model() const override { return f_.model(); }
  std::string name() const override { return "exact-tensor"; }

 private:
  SIVSignal f_;
};

/// F(t) from a sample matrix (row sums precomputed).
inline double modulus_sq_approx(const SampleMatrix &S, const DualGeneratorTable &table,
                                double t) {
  return SampleSource(S, table).modulus_sq(t);
}

/// c_j for one point; identical to modulus_sq_approx.
inline double local_constants(const SampleMatrix &S, const DualGeneratorTable &table, double p) {
  return modulus_sq_approx(S, table, p);
}

/// L_j(omega) = conj(S(p, omega)) / sqrt(c_j).
inline cplx local_L(const LocalSource &src, double p, double c_j, double omega) {
  if (!(c_j > 0.0)) throw IllDefined("local_L: c_j must be positive");
  return std::conj(src.S(p, omega)) / std::sqrt(c_j);
}

inline cplx local_L(const SampleMatrix &S, const DualGeneratorTable &table, double p, double c_j,
                    double omega) {
  return local_L(SampleSource(S, table), p, c_j, omega);
}

/// Piecewise phase-synchronized routine R on [p_1, p_J].
struct ReconstructionResult {
  Partition partition;
  std::vector<double> c_consts;  // c_1..c_J
  std::vector<cplx> phases;      // nu_1..nu_{J-1}
  std::vector<cplx> chain;       // nu_1 ... nu_{j-1} for segment j (chain[0] = 1)
  std::shared_ptr<const LocalSource> source;
  bool zero_outside = false;

  double lo() const { return partition.points.front(); }
  double hi() const { return partition.points.back(); }

  /// Index j (0-based) of the segment (p_j, p_{j+1}] containing t.
  std::size_t segment(double t) const {
    const auto &p = partition.points;
    auto it = std::lower_bound(p.begin(), p.end(), t);
    std::size_t j = static_cast<std::size_t>(it - p.begin());
    return j == 0 ? 0 : j - 1;
  }

  cplx operator()(double t) const {
    const auto &p = partition.points;
    if (t < p.front() || t > p.back()) {
      if (zero_outside) return 0.0;
      throw ArgumentError("ReconstructionResult: t outside [p_1, p_J]");
    }
    if (t == p.front()) return local_L(*source, p[0], c_consts[0], 0.0);
    std::size_t j = segment(t);
    return chain[j] * local_L(*source, p[j], c_consts[j], t - p[j]);
  }

  /// Values at the given points; parallel, identical to sequential calls.
  std::vector<cplx> evaluate(const std::vector<double> &ts) const {
    std::vector<cplx> out(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) { out[i] = (*this)(ts[i]); });
    return out;
  }
};

/// Constants, phases and chained products for a given partition.
inline ReconstructionResult reconstruct(std::shared_ptr<const LocalSource> src,
                                        const Partition &partition) {
  ReconstructionResult R;
  R.partition = partition;
  R.source = std::move(src);
  const auto &p = partition.points;
  const std::size_t J = p.size();
  R.c_consts.resize(J);
  parallel_for(J, [&](std::size_t j) { R.c_consts[j] = R.source->modulus_sq(p[j]); });
  for (std::size_t j = 0; j < J; ++j)
    if (!(R.c_consts[j] > 0.0))
      throw IllDefined("reconstruct: c_j <= 0 at j = " + std::to_string(j + 1),
                       static_cast<int>(j + 1));
  std::vector<cplx> L(J - 1);
  parallel_for(J - 1, [&](std::size_t j) {
    L[j] = local_L(*R.source, p[j], R.c_consts[j], p[j + 1] - p[j]);
  });
  R.phases.resize(J - 1);
  R.chain.assign(J - 1, 1.0);
  for (std::size_t j = 0; j + 1 < J; ++j) {
    double a = std::abs(L[j]);
    if (!(a > 0.0) || !std::isfinite(a))
      throw PhaseUndefined("reconstruct: L_j vanishes at j = " + std::to_string(j + 1),
                           static_cast<int>(j + 1));
    R.phases[j] = L[j] / a;
    if (j + 1 < J - 1) R.chain[j + 1] = R.chain[j] * R.phases[j];
  }
  return R;
}

inline ReconstructionResult reconstruct(const SampleMatrix &S, const Partition &partition,
                                        const DualGeneratorTable &table) {
  return reconstruct(std::make_shared<SampleSource>(S, table), partition);
}

inline ReconstructionResult reconstruct(const SampleMatrix &S, const Partition &partition) {
  return reconstruct(std::make_shared<SampleSource>(S), partition);
}

/// Exact-tensor oracle: the routine fed with exact values of f_omega.
inline ReconstructionResult reconstruct_exact(const SIVSignal &f, const Partition &partition) {
  return reconstruct(std::make_shared<ExactTensorSource>(f), partition);
}

namespace detail {
/// Removes interior points whose neighbours are within r, sweeping left to
/// right; a removal only changes the neighbourhood of the previous point, so
/// stepping back one index is equivalent to restarting.
inline std::vector<double> thin_points(std::vector<double> u, double r) {
  std::size_t m = 1;
  while (m + 1 < u.size()) {
    if (u[m + 1] - u[m - 1] <= r) {
      u.erase(u.begin() + static_cast<std::ptrdiff_t>(m));
      if (m > 1) --m;
    } else {
      ++m;
    }
  }
  return u;
}
}  // namespace detail

/// Grid selection, thinning to a fixed point, then the first maximal run of
/// gaps <= r.
inline Partition detect_partition(const std::function<double(double)> &F, double s,
                                  double gamma_tilde, double r, double grid_step) {
  if (!(grid_step > 0.0) || !(s > 0.0) || !(r > 0.0))
    throw ArgumentError("detect_partition: s, r and grid_step must be positive");
  const long L = static_cast<long>(std::ceil(2.0 * s / grid_step));
  std::vector<double> ts(static_cast<std::size_t>(L + 1)), Fv(ts.size());
  for (long i = 0; i <= L; ++i) ts[static_cast<std::size_t>(i)] = -s + 2.0 * s * i / L;
  parallel_for(ts.size(), [&](std::size_t i) { Fv[i] = F(ts[i]); });
  std::vector<double> sel;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (Fv[i] >= gamma_tilde) sel.push_back(ts[i]);
  if (sel.empty()) throw NoAdmissiblePoint("detect_partition: F < gamma_tilde on the whole grid");
  auto u = detail::thin_points(std::move(sel), r);
  std::size_t k = 0;
  while (k + 1 < u.size() && u[k + 1] - u[k] > r) ++k;
  if (k + 1 >= u.size())
    throw PartitionTooShort("detect_partition: no two admissible points within r");
  std::size_t e = k + 1;
  while (e + 1 < u.size() && u[e + 1] - u[e] <= r) ++e;
  std::vector<double> p(u.begin() + static_cast<std::ptrdiff_t>(k),
                        u.begin() + static_cast<std::ptrdiff_t>(e + 1));
  return Partition(std::move(p), std::sqrt(2.0 * gamma_tilde / 3.0), r);
}

struct Algorithm1Options {
  double grid_step = 0.0;  // 0 selects beta / 10
};

/// Steps 1-4: build F, detect the partition with threshold gamma_tilde,
/// reconstruct; the result is 0 outside [p_1, p_J].
inline ReconstructionResult algorithm1(std::shared_ptr<const LocalSource> src, double r,
                                       double gamma_tilde, double s,
                                       const Algorithm1Options &opt = {}) {
  double step = opt.grid_step > 0.0 ? opt.grid_step : src->model().beta / 10.0;
  auto part = detect_partition([&](double t) { return src->modulus_sq(t); }, s, gamma_tilde, r,
                               step);
  auto R = reconstruct(std::move(src), part);
  R.zero_outside = true;
  return R;
}

inline ReconstructionResult algorithm1(const SampleMatrix &S, double r, double gamma_tilde,
                                       double s, const DualGeneratorTable &table,
                                       const Algorithm1Options &opt = {}) {
  return algorithm1(std::make_shared<SampleSource>(S, table), r, gamma_tilde, s, opt);
}

inline ReconstructionResult algorithm1(const SampleMatrix &S, double r, double gamma_tilde,
                                       double s, const Algorithm1Options &opt = {}) {
  return algorithm1(std::make_shared<SampleSource>(S), r, gamma_tilde, s, opt);
}

/// E(omega) = |f_omega(p + omega) - sqrt(c) conj(L(omega))| at a point p.
/// sqrt(c) conj(L) reduces to S(p, omega), so E stays defined when the
/// estimated c is not positive.
inline double error_term(const SIVSignal &f, const LocalSource &src, double p, double omega) {
  return std::abs(tensor_eval(f, omega, p + omega) - src.S(p, omega));
}

inline double error_term(const SIVSignal &f, const SampleMatrix &S,
                         const DualGeneratorTable &table, double p, double omega) {
  return error_term(f, SampleSource(S, table), p, omega);
}

struct ErrorBoundInputs {
  long m = 1;          // lattice margin N - ceil((2/beta)(s + r/2))
  double h = 0.0;
  long H = 0;
  double eta_norm = 0.0;
  double omega = 0.0;
  double K = 0.0;
  double nu = 0.0;
  double c_inf = 0.0;
};

struct ErrorBound {
  double lattice = 0.0;
  double trapezoid = 0.0;
  double cutoff = 0.0;
  double noise = 0.0;
  double total = 0.0;
};

/// Four-term bound on |f_omega(p + omega) - S(omega)|.
inline ErrorBound error_bound_rhs(const ErrorBoundInputs &in, const GaussianModel &m) {
  if (in.m < 1) throw ArgumentError("error_bound_rhs: m must be >= 1");
  if (!(in.h > 0.0) || !(in.K > 0.0) || !(in.nu > 0.0))
    throw ArgumentError("error_bound_rhs: h, K, nu must be positive");
  const double s = m.sigma, b = m.beta, w = std::abs(in.omega);
  const double g = std::exp(w * w / (4.0 * s * s));
  const double P = 1.0 + s / b * 2.0 * std::sqrt(2.0 * kPi);
  const double q = 2.0 + 4.0 / (in.nu * b);
  const double c2 = in.c_inf * in.c_inf;
  const double sp = std::sqrt(kPi);
  ErrorBound e;
  e.lattice = 4.0 * sp * in.K * g * s / (in.nu * b) * P * P * c2 * std::exp(-in.nu * b / 2.0 * in.m);
  e.trapezoid = 2.0 * sp * in.K * g * std::exp(w / s + 1.0) * s * q * P * P * c2 /
                std::expm1(1.0 / (s * in.h));
  double hh = kPi * in.H * in.h * s;
  e.cutoff = sp * in.K * g * s * q * P * P * c2 * std::exp(-2.0 * hh * hh);
  e.noise = std::sqrt(2.0) * in.K * g * q * in.h * in.eta_norm;
  e.total = e.lattice + e.trapezoid + e.cutoff + e.noise;
  return e;
}

/// h sum_{|k| <= H} W(hk).
template <typename W>
auto trapezoid(const W &f, double h, long H) -> decltype(f(0.0) * 1.0) {
  if (!(h > 0.0)) throw ArgumentError("trapezoid: h must be positive");
  if (H < 0) throw ArgumentError("trapezoid: H must be >= 0");
  decltype(f(0.0) * 1.0) s = f(0.0);
  for (long k = 1; k <= H; ++k) s += f(h * k) + f(-h * k);
  return h * s;
}

/// Infinite trapezoid sum, stopped once max(|W(hk)|, |W(-hk)|) stays below
/// 1e-16 times the running maximum for 10 consecutive k.
template <typename W>
auto trapezoid_inf(const W &f, double h, long k_cap = 100000000L) -> decltype(f(0.0) * 1.0) {
  if (!(h > 0.0)) throw ArgumentError("trapezoid: h must be positive");
  auto v0 = f(0.0);
  decltype(f(0.0) * 1.0) s = v0;
  double run = std::abs(v0);
  int quiet = 0;
  for (long k = 1; k <= k_cap; ++k) {
    auto a = f(h * k), b = f(-h * k);
    s += a + b;
    double mx = std::max(std::abs(a), std::abs(b));
    run = std::max(run, mx);
    quiet = (mx < 1e-16 * run || (run == 0.0 && mx == 0.0)) ? quiet + 1 : 0;
    if (quiet >= 10) return h * s;
  }
  throw NumericError("trapezoid_inf: integrand does not decay");
}

/// P_omega(g) = h sum_n sum_j |Gg(beta n/2, hj)|^2 e^{-2 pi i omega h j}
///              T_{beta n/2} dual_omega
/// for a signal supported in [-a, a] with a h <= 1/4.
class TensorProjection {
 public:
  TensorProjection(const GenericSignal &g, const GaussianModel &m, double omega, double h,
                   long H, DualGeneratorTable table, double quad_tol = 1e-12)
      : m_(m), omega_(omega), h_(h), tb_(std::move(table)) {
    if (!(h > 0.0) || H < 0) throw ArgumentError("TensorProjection: need h > 0, H >= 0");
    if (g.support_radius * h > 0.25)
      throw HypothesisViolation("TensorProjection: support radius times h exceeds 1/4");
    const double reach = g.support_radius + 12.0 * m.sigma;
    n_max_ = static_cast<long>(std::ceil(2.0 * reach / m.beta));
    q_.assign(static_cast<std::size_t>(2 * n_max_ + 1), 0.0);
    parallel_for(q_.size(), [&](std::size_t i) {
      double x = 0.5 * m.beta * (static_cast<long>(i) - n_max_);
      cplx s = 0.0;
      for (long j = -H; j <= H; ++j)
        s += generic_spectrogram(g, m, x, h * j, quad_tol) *
             std::polar(1.0, -2.0 * kPi * omega * h * j);
      q_[i] = h * s;
    });
  }

  /// Coefficient h sum_j |Gg(beta n/2, hj)|^2 e^{-2 pi i omega h j}.
  cplx coefficient(long n) const {
    if (n < -n_max_ || n > n_max_) return 0.0;
    return q_[static_cast<std::size_t>(n + n_max_)];
  }
  long n_max() const { return n_max_; }

  cplx operator()(double t) const {
    cplx s = 0.0;
    for (long n = -n_max_; n <= n_max_; ++n)
      s += coefficient(n) * dual_tensor_eval(t - 0.5 * m_.beta * n, omega_, m_, tb_);
    return s;
  }

 private:
  GaussianModel m_;
  double omega_, h_;
  DualGeneratorTable tb_;
  long n_max_ = 0;
  std::vector<cplx> q_;
};

inline TensorProjection project_tensor(const GenericSignal &g, const GaussianModel &m,
                                       double omega, double h, long H,
                                       const DualGeneratorTable &table,
                                       double quad_tol = 1e-12) {
  return TensorProjection(g, m, omega, h, H, table, quad_tol);
}

}  // namespace gaborpr

#endif  // GABORPR_RECONSTRUCTION_HPP_
