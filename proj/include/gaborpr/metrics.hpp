// gaborpr/metrics.hpp

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

#ifndef GABORPR_METRICS_HPP_
#define GABORPR_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gaborpr/errors.hpp"
#include "gaborpr/reconstruction.hpp"
#include "gaborpr/sampling.hpp"
#include "gaborpr/signal.hpp"
#include "gaborpr/special_functions.hpp"

namespace gaborpr {

/// min over unit tau of sup_t |f(t) - tau g(t)| on a uniform grid.
struct QuotientDistance {
  double value = 0.0;
  cplx tau_star = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  double grid_step = 0.0;
  double lipschitz_slack = 0.0;  // half step times a Lipschitz bound, 0 if unknown
};

/// Uniform grid on [lo, hi] whose spacing does not exceed step.
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(hi > lo)) throw ArgumentError("uniform_grid: empty interval");
  if (!(step > 0.0)) throw ArgumentError("uniform_grid: step must be > 0");
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  n = std::max<std::size_t>(n, 1);
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = lo + (hi - lo) * static_cast<double>(i) / n;
  t.back() = hi;
  return t;
}

namespace detail {

inline double phase_objective(const std::vector<cplx> &f, const std::vector<cplx> &g,
                              double theta) {
  cplx tau = std::polar(1.0, theta);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - tau * g[i]));
  return m;
}

}  // namespace detail

/// Phase alignment of two value vectors: 3600-point scan, then golden
/// section on the bracketing cell down to 1e-14 radians.
inline QuotientDistance quotient_distance(const std::vector<cplx> &f, const std::vector<cplx> &g) {
  if (f.empty()) throw ArgumentError("quotient_distance: no evaluation points");
  if (f.size() != g.size()) throw ArgumentError("quotient_distance: size mismatch");
  constexpr int kScan = 3600;
  const double cell = 2 * kPi / kScan;
  int best = 0;
  double best_v = INFINITY;
  for (int k = 0; k < kScan; ++k) {
    double v = detail::phase_objective(f, g, k * cell);
    if (v < best_v) best_v = v, best = k;
  }
  double a = (best - 1) * cell, b = (best + 1) * cell;
  const double ig = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - ig * (b - a), x2 = a + ig * (b - a);
  double f1 = detail::phase_objective(f, g, x1), f2 = detail::phase_objective(f, g, x2);
  while (b - a > 1e-14) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - ig * (b - a);
      f1 = detail::phase_objective(f, g, x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + ig * (b - a);
      f2 = detail::phase_objective(f, g, x2);
    }
  }
  double theta = 0.5 * (a + b);
  double v = detail::phase_objective(f, g, theta);
  QuotientDistance out;
  if (v <= best_v) {
    out.value = v;
    out.tau_star = std::polar(1.0, theta);
  } else {
    out.value = best_v;
    out.tau_star = std::polar(1.0, best * cell);
  }
  return out;
}

/// Quotient distance of two callables on [lo, hi].
template <typename F, typename G>
QuotientDistance quotient_distance(const F &f, const G &g, double lo, double hi,
                                   double grid_step) {
  if (!(grid_step > 0.0)) throw ArgumentError("quotient_distance: grid_step must be > 0");
  if (!(hi > lo)) throw ArgumentError("quotient_distance: empty interval");
  auto ts = uniform_grid(lo, hi, grid_step);
  std::vector<cplx> fv(ts.size()), gv(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) fv[i] = f(ts[i]), gv[i] = g(ts[i]);
  auto q = quotient_distance(fv, gv);
  q.lo = lo;
  q.hi = hi;
  q.grid_step = (hi - lo) / static_cast<double>(ts.size() - 1);
  return q;
}

/// Upper bound on |f'| for f in the shift-invariant space.
inline double lipschitz_bound(const SIVSignal &f) {
  const auto &m = f.model();
  return f.c_inf() * (2 * std::exp(-0.5) / m.sigma + 2 / m.beta);
}

inline QuotientDistance quotient_distance(const SIVSignal &f, const SIVSignal &g, double lo,
                                          double hi, double grid_step = 0.0) {
  if (grid_step == 0.0) grid_step = f.model().beta / 50;
  auto q = quotient_distance([&](double t) { return f(t); }, [&](double t) { return g(t); }, lo,
                             hi, grid_step);
  q.lipschitz_slack = 0.5 * q.grid_step * (lipschitz_bound(f) + lipschitz_bound(g));
  return q;
}

/// Grid supremum of a callable's modulus on [lo, hi].
template <typename F>
double sup_norm(const F &f, double lo, double hi, double grid_step) {
  double m = 0.0;
  for (double t : uniform_grid(lo, hi, grid_step)) m = std::max(m, std::abs(f(t)));
  return m;
}

struct StabilityOptions {
  double grid_step = 0.0;               // 0 means beta / 50
  std::optional<double> C;              // C(sigma, beta); computed when empty
  MixedNormOptions mixed;
};

struct LocalInterval {
  double p = 0.0;
  cplx tau = 1.0;
  double c = 0.0;    // c_j
  double lhs = 0.0;  // sup_{I_j} |f - tau_j g|
  double rhs = 0.0;  // c_j B
  double margin() const { return rhs - lhs; }
};

struct LocalStabilityReport {
  double mixed = 0.0;  // || |Gf|^2 - |Gg|^2 ||_{beta/2, inf}
  double C = 0.0;
  double B = 0.0;      // sqrt(2) mixed C
  double modulus_lhs = 0.0;  // sup_R ||f|^2 - |g|^2|
  double r = 0.0;
  double grid_step = 0.0;
  std::vector<LocalInterval> intervals;

  double modulus_margin() const { return B - modulus_lhs; }
  bool holds(double slack = 1e-6) const {
    if (modulus_lhs > B * (1 + slack)) return false;
    for (const auto &iv : intervals)
      if (iv.lhs > iv.rhs * (1 + slack)) return false;
    return true;
  }
};

namespace detail {

inline void check_same_model(const SIVSignal &f, const SIVSignal &g, const char *who) {
  if (f.model().sigma != g.model().sigma || f.model().beta != g.model().beta)
    throw ArgumentError(std::string(who) + ": signals use different models");
}

inline double resolve_C(const GaussianModel &m, const StabilityOptions &opt) {
  return opt.C ? *opt.C : stability_constant_C(m).value;
}

}  // namespace detail

/// Both local inequalities: the global modulus bound
///   sup |(|f|^2 - |g|^2)| <= B := sqrt(2) mixed C,
/// and on each I_j = [p_j - r, p_j + r]
///   sup_{I_j} |f - tau_j g| <= c_j B,
///   c_j = (e^{r^2/(4 sigma^2)} + ||f||_{I_j} / (|f(p_j)| + |g(p_j)|)) / |g(p_j)|.
inline LocalStabilityReport local_stability_check(const SIVSignal &f, const SIVSignal &g,
                                                  const std::vector<double> &p, double r,
                                                  const StabilityOptions &opt = {}) {
  detail::check_same_model(f, g, "local_stability_check");
  if (p.empty()) throw ArgumentError("local_stability_check: no points");
  if (!(r > 0.0)) throw ArgumentError("local_stability_check: r must be > 0");
  const auto &m = f.model();
  LocalStabilityReport rep;
  rep.r = r;
  rep.grid_step = opt.grid_step > 0 ? opt.grid_step : m.beta / 50;
  for (double pj : p) {
    if (std::abs(f(pj)) == 0.0 || std::abs(g(pj)) == 0.0)
      throw HypothesisViolation("local_stability_check: f or g vanishes at a point");
  }
  rep.C = detail::resolve_C(m, opt);
  rep.mixed = mixed_norm(f, g, m.beta / 2, INFINITY, opt.mixed);
  rep.B = std::sqrt(2.0) * rep.mixed * rep.C;
  rep.modulus_lhs = sup_norm([&](double t) { return std::norm(f(t)) - std::norm(g(t)); },
                             std::min(f.lo(), g.lo()), std::max(f.hi(), g.hi()), rep.grid_step);
  const double e = std::exp(r * r / (4 * m.sigma * m.sigma));
  for (double pj : p) {
    cplx fp = f(pj), gp = g(pj);
    LocalInterval iv;
    iv.p = pj;
    iv.tau = std::conj(gp) * std::abs(fp) / (std::abs(gp) * std::conj(fp));
    double fn = sup_norm([&](double t) { return f(t); }, pj - r, pj + r, rep.grid_step);
    iv.c = (e + fn / (std::abs(fp) + std::abs(gp))) / std::abs(gp);
    iv.lhs = sup_norm([&](double t) { return f(t) - iv.tau * g(t); }, pj - r, pj + r,
                      rep.grid_step);
    iv.rhs = iv.c * rep.B;
    rep.intervals.push_back(iv);
  }
  return rep;
}

struct GlobalStabilityReport {
  QuotientDistance lhs;
  double mixed = 0.0;
  double C = 0.0;
  double f_sup = 0.0;  // on I
  double g_sup = 0.0;
  double r = 0.0;      // largest gap
  double gamma = 0.0;
  std::size_t J = 0;
  double prefactor = 0.0;  // (J-1) e^{r^2/4sigma^2} max{.}/min{gamma, gamma^3} mixed
  double rhs_C = 0.0;      // prefactor 32 sqrt(2)/3 C
  double rhs_C2 = 0.0;     // prefactor 32 sqrt(2)/3 C^2

  bool holds(double slack = 1e-6) const { return lhs.value <= rhs_C2 * (1 + slack); }
  bool holds_single_C(double slack = 1e-6) const { return lhs.value <= rhs_C * (1 + slack); }
  double ratio_C2() const { return rhs_C2 > 0 ? lhs.value / rhs_C2 : (lhs.value > 0 ? INFINITY : 0); }
  double ratio_C() const { return rhs_C > 0 ? lhs.value / rhs_C : (lhs.value > 0 ? INFINITY : 0); }
};

/// Global stability on I = [p_1 - r, p_J + r], r the largest gap. Requires
/// |f(p_j)| >= partition.gamma.
inline GlobalStabilityReport theoremB_check(const SIVSignal &f, const SIVSignal &g,
                                     const Partition &part, const StabilityOptions &opt = {}) {
  detail::check_same_model(f, g, "theoremB_check");
  if (!(part.gamma > 0.0)) throw ArgumentError("theoremB_check: gamma must be > 0");
  for (double pj : part.points)
    if (std::abs(f(pj)) < part.gamma)
      throw HypothesisViolation("theoremB_check: |f(p_j)| < gamma at p_j = " + std::to_string(pj));
  const auto &m = f.model();
  double step = opt.grid_step > 0 ? opt.grid_step : m.beta / 50;
  GlobalStabilityReport rep;
  rep.r = part.max_gap();
  rep.gamma = part.gamma;
  rep.J = part.J();
  double lo = part.points.front() - rep.r, hi = part.points.back() + rep.r;
  rep.lhs = quotient_distance(f, g, lo, hi, step);
  rep.f_sup = sup_norm([&](double t) { return f(t); }, lo, hi, step);
  rep.g_sup = sup_norm([&](double t) { return g(t); }, lo, hi, step);
  rep.C = detail::resolve_C(m, opt);
  rep.mixed = mixed_norm(f, g, m.beta / 2, INFINITY, opt.mixed);
  double gm = std::min(rep.gamma, std::pow(rep.gamma, 3));
  rep.prefactor = (rep.J - 1.0) * std::exp(rep.r * rep.r / (4 * m.sigma * m.sigma)) *
                  std::max(rep.f_sup * rep.f_sup, rep.f_sup + rep.g_sup) / gm * rep.mixed;
  const double k = 32 * std::sqrt(2.0) / 3;
  rep.rhs_C = rep.prefactor * k * rep.C;
  rep.rhs_C2 = rep.prefactor * k * rep.C * rep.C;
  return rep;
}

/// 32 max{1, f_sup^2} / min{gamma, gamma^5} (eps + eps^2).
inline double theoremC_rhs(double eps, double gamma, double f_sup) {
  if (!(eps > 0.0) || !(gamma > 0.0) || !(f_sup > 0.0))
    throw ArgumentError("theoremC_rhs: arguments must be > 0");
  return 32 * std::max(1.0, f_sup * f_sup) / std::min(gamma, std::pow(gamma, 5)) * (eps + eps * eps);
}

/// Same bound with the (J - 1) factor, for a known partition of size J.
inline double partition_error_rhs(double eps, double gamma, double f_sup, std::size_t J) {
  if (J < 2) throw ArgumentError("partition_error_rhs: J must be >= 2");
  return (J - 1.0) * theoremC_rhs(eps, gamma, f_sup);
}

/// phi(. - beta n) + sign phi(. + beta n).
inline SIVSignal two_bump(const GaussianModel &m, long n, double sign) {
  if (n < 1) throw ArgumentError("two_bump: n must be >= 1");
  std::vector<cplx> c(static_cast<std::size_t>(2 * n + 1), 0.0);
  c.front() = sign;
  c.back() = 1.0;
  return SIVSignal(m, -n, c);
}

struct InstabilityRow {
  long n = 0;
  double quotient = 0.0;
  double mixed = 0.0;
  double ratio = 0.0;
};

/// Quotient distance of the two-bump pair on [-half_width, half_width]
/// against the mixed norm of the spectrogram difference.
inline std::vector<InstabilityRow> instability_table(const GaussianModel &m,
                                                     const std::vector<long> &ns,
                                                     double half_width = 0.0) {
  std::vector<InstabilityRow> out;
  for (long n : ns) {
    double w = half_width > 0 ? half_width : 3 * m.beta;
    auto fp = two_bump(m, n, 1.0), fm = two_bump(m, n, -1.0);
    InstabilityRow row;
    row.n = n;
    row.quotient = quotient_distance(fp, fm, -w, w).value;
    row.mixed = mixed_norm(fp, fm, m.beta / 2, INFINITY);
    row.ratio = row.mixed > 0 ? row.quotient / row.mixed : INFINITY;
    out.push_back(row);
  }
  return out;
}

}  // namespace gaborpr

#endif  // GABORPR_METRICS_HPP_
