// gaborpr/sampling.hpp

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

#ifndef GABORPR_SAMPLING_HPP_
#define GABORPR_SAMPLING_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gaborpr/errors.hpp"
#include "gaborpr/parallel.hpp"
#include "gaborpr/quadrature.hpp"
#include "gaborpr/signal.hpp"
#include "gaborpr/special_functions.hpp"

namespace gaborpr {

/// Nodes (beta/2) n, |n| <= N, times h k, |k| <= H.
struct Grid {
  double beta = 1.0;
  double h = 1.0;
  long N = 0;
  long H = 0;

  Grid() = default;
  Grid(double beta_, double h_, long N_, long H_) : beta(beta_), h(h_), N(N_), H(H_) {
    if (!(beta > 0.0) || !(h > 0.0) || N < 0 || H < 0)
      throw ArgumentError("Grid: need beta > 0, h > 0, N >= 0, H >= 0");
  }
  long rows() const { return 2 * N + 1; }
  long cols() const { return 2 * H + 1; }
  double x(long n) const { return 0.5 * beta * n; }
  double w(long k) const { return h * k; }
};

struct NoiseSpec {
  enum class Kind { None, Gaussian, AdversarialRowsum };
  Kind kind = Kind::None;
  double sd = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sd, std::uint64_t seed) {
    return {Kind::Gaussian, sd, 0.0, seed};
  }
  static NoiseSpec adversarial_rowsum(double delta, std::uint64_t seed) {
    return {Kind::AdversarialRowsum, 0.0, delta, seed};
  }
};

/// Real (2N+1) x (2H+1) matrix of spectrogram samples, row-major, row n from
/// -N, column k from -H.
struct SampleMatrix {
  Grid grid;
  double sigma = 1.0;
  std::vector<double> values;
  double noise_inf_norm_actual = 0.0;

  double at(long n, long k) const {
    return values[static_cast<std::size_t>((n + grid.N) * grid.cols() + (k + grid.H))];
  }
  GaussianModel model() const { return GaussianModel(sigma, grid.beta); }
};

/// Maximum absolute row sum.
inline double noise_inf_norm(const std::vector<double> &eta, long rows, long cols) {
  if (static_cast<long>(eta.size()) != rows * cols)
    throw ArgumentError("noise_inf_norm: size mismatch");
  double best = 0.0;
  for (long i = 0; i < rows; ++i) {
    double s = 0.0;
    for (long j = 0; j < cols; ++j) s += std::abs(eta[static_cast<std::size_t>(i * cols + j)]);
    best = std::max(best, s);
  }
  return best;
}

inline double noise_inf_norm(const std::vector<std::vector<double>> &eta) {
  double best = 0.0;
  for (const auto &row : eta) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

/// Seeded noise in row-major node order.
inline std::vector<double> generate_noise(const Grid &g, const NoiseSpec &spec) {
  std::vector<double> eta(static_cast<std::size_t>(g.rows() * g.cols()), 0.0);
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case NoiseSpec::Kind::None:
      break;
    case NoiseSpec::Kind::Gaussian: {
      if (spec.sd < 0.0) throw ArgumentError("noise: sd must be >= 0");
      std::normal_distribution<double> nd(0.0, 1.0);
      for (auto &v : eta) v = spec.sd * nd(rng);
      break;
    }
    case NoiseSpec::Kind::AdversarialRowsum: {
      if (spec.delta < 0.0) throw ArgumentError("noise: delta must be >= 0");
      std::uniform_real_distribution<double> ud(-1.0, 1.0);
      for (auto &v : eta) v = ud(rng);
      double nrm = noise_inf_norm(eta, g.rows(), g.cols());
      if (nrm > 0.0) {
        double s = spec.delta / nrm;
        for (auto &v : eta) v *= s;
        // Round-off may push the row sum a few ulps above delta.
        double again = noise_inf_norm(eta, g.rows(), g.cols());
        if (again > spec.delta) {
          double shrink = spec.delta / again * (1.0 - 4 * std::numeric_limits<double>::epsilon());
          for (auto &v : eta) v *= shrink;
        }
      }
      break;
    }
  }
  return eta;
}

namespace detail {
inline SampleMatrix finish_samples(const Grid &g, double sigma, std::vector<double> clean,
                                   const NoiseSpec &noise) {
  SampleMatrix S;
  S.grid = g;
  S.sigma = sigma;
  auto eta = generate_noise(g, noise);
  S.noise_inf_norm_actual = noise_inf_norm(eta, g.rows(), g.cols());
  for (std::size_t i = 0; i < clean.size(); ++i) clean[i] += eta[i];
  S.values = std::move(clean);
  return S;
}
}  // namespace detail

/// Clean closed-form spectrogram plus seeded noise.
inline SampleMatrix sample_spectrogram(const SIVSignal &f, const Grid &g,
                                       const NoiseSpec &noise = {}) {
  if (std::abs(g.beta - f.model().beta) > 1e-14 * f.model().beta)
    throw ArgumentError("sample_spectrogram: grid beta differs from the signal model");
  std::vector<double> clean(static_cast<std::size_t>(g.rows() * g.cols()));
  parallel_for(static_cast<std::size_t>(g.rows()), [&](std::size_t i) {
    long n = static_cast<long>(i) - g.N;
    auto sc = spectrogram_coeffs(f, g.x(n));
    for (long k = -g.H; k <= g.H; ++k)
      clean[i * g.cols() + static_cast<std::size_t>(k + g.H)] =
          spectrogram_from_coeffs(sc, f.model(), g.w(k));
  });
  return detail::finish_samples(g, f.model().sigma, std::move(clean), noise);
}

/// Quadrature spectrogram of a generic signal plus seeded noise.
inline SampleMatrix sample_spectrogram(const GenericSignal &f, const GaussianModel &m,
                                       const Grid &g, const NoiseSpec &noise = {},
                                       double quad_tol = 1e-12) {
  if (std::abs(g.beta - m.beta) > 1e-14 * m.beta)
    throw ArgumentError("sample_spectrogram: grid beta differs from the model");
  std::vector<double> clean(static_cast<std::size_t>(g.rows() * g.cols()), 0.0);
  parallel_for(static_cast<std::size_t>(g.rows()), [&](std::size_t i) {
    long n = static_cast<long>(i) - g.N;
    double x = g.x(n);
    if (x - 12 * m.sigma > f.support_radius || x + 12 * m.sigma < -f.support_radius) return;
    for (long k = -g.H; k <= g.H; ++k)
      clean[i * g.cols() + static_cast<std::size_t>(k + g.H)] =
          generic_spectrogram(f, m, x, g.w(k), quad_tol);
  });
  return detail::finish_samples(g, m.sigma, std::move(clean), noise);
}

struct MixedNormOptions {
  double rel_tol = 1e-10;  // per row, relative to an a priori bound on the row integral
  double abs_tol = 1e-300;
};

/// || |Gf|^2 - |Gg|^2 ||_{alpha,p}: l^p over x in alpha Z of the L^1 norm in
/// frequency. The difference is formed on the trigonometric coefficients, so
/// nearly equal spectrograms keep their relative accuracy.
inline double mixed_norm(const SIVSignal &f, const SIVSignal &g, double alpha, double p,
                         const MixedNormOptions &opt = {}) {
  if (!(alpha > 0.0)) throw ArgumentError("mixed_norm: alpha must be > 0");
  if (!(p >= 1.0)) throw ArgumentError("mixed_norm: p must lie in [1, inf]");
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0))
    throw ArgumentError("mixed_norm: tolerances must be > 0");
  const GaussianModel &m = f.model();
  if (std::abs(m.sigma - g.model().sigma) > 0 || std::abs(m.beta - g.model().beta) > 0)
    throw ArgumentError("mixed_norm: signals use different models");
  double lo = std::min(f.lo(), g.lo()), hi = std::max(f.hi(), g.hi());
  long n0 = static_cast<long>(std::floor(lo / alpha)), n1 = static_cast<long>(std::ceil(hi / alpha));
  long lspan = std::max(f.n_max() - f.n_min(), g.n_max() - g.n_min());
  // e^{-2 pi^2 sigma^2 T^2} = e^{-45}
  const double T = std::sqrt(45.0 / (2 * kPi * kPi * m.sigma * m.sigma));
  const double sp = 1.0 / (2 * kPi * m.sigma);
  const double panel = std::min(T, 0.5 / (m.beta * (lspan + 1)));
  std::vector<double> rows(static_cast<std::size_t>(n1 - n0 + 1), 0.0);
  parallel_for(rows.size(), [&](std::size_t i) {
    double x = alpha * (n0 + static_cast<long>(i));
    auto sf = spectrogram_coeffs(f, x), sg = spectrogram_coeffs(g, x);
    long L = std::max(sf.l_max, sg.l_max);
    std::vector<cplx> d(static_cast<std::size_t>(L + 1));
    double bound = 0.0;
    for (long l = 0; l <= L; ++l) {
      d[static_cast<std::size_t>(l)] = sf.at(l) - sg.at(l);
      bound += (l ? 2.0 : 1.0) * std::abs(d[static_cast<std::size_t>(l)]);
    }
    if (bound == 0.0) return;
    bound *= kPi * m.sigma * m.sigma * sp * std::sqrt(2 * kPi);
    QuadOptions q;
    q.abs_tol = std::max(opt.abs_tol, opt.rel_tol * bound);
    q.panel = panel;
    q.strict = false;
    auto r = integrate(
        [&](double t) {
          double s = d[0].real();
          for (long l = 1; l <= L; ++l)
            s += 2.0 * (d[static_cast<std::size_t>(l)] * std::polar(1.0, kPi * m.beta * l * t)).real();
          return std::abs(kPi * m.sigma * m.sigma * gaussian(t, sp) * s);
        },
        -T, T, q);
    rows[i] = r.value;
  });
  if (std::isinf(p)) {
    double best = 0.0;
    for (double v : rows) best = std::max(best, v);
    return best;
  }
  double s = 0.0;
  for (double v : rows) s += std::pow(v, p);
  return std::pow(s, 1.0 / p);
}

/// Constants (a, b, D) of the qualitative error bound.
struct PlanConstants {
  double a = 0.0;
  double b = 0.0;
  double D = 0.0;
  std::string source;
};

/// Coefficients of the four error-bound terms at omega = r; D is their max,
/// a = nu beta / 2, b = 2 pi^2 sigma^2.
inline PlanConstants derived_constants(const GaussianModel &m, double r, const DecayConstants &dc) {
  const double s = m.sigma, be = m.beta, K = dc.K, nu = dc.nu;
  const double P = 1.0 + s / be * 2.0 * std::sqrt(2 * kPi);
  const double g = std::exp(r * r / (4 * s * s));
  const double q = 2.0 + 4.0 / (nu * be);
  double d1 = 4 * std::sqrt(kPi) * K * g * s / (nu * be) * P * P;
  double d2 = 2 * std::sqrt(kPi) * K * g * std::exp(r / s + 1.0) * s * q * P * P;
  double d3 = std::sqrt(kPi) * K * g * s * q * P * P;
  double d4 = std::sqrt(2.0) * K * g * q;
  return {nu * be / 2.0, 2 * kPi * kPi * s * s, std::max({d1, d2, d3, d4}),
          dc.fitted ? "derived-fitted" : "derived"};
}

/// Explicit-regime constants: the closed-form bound when r <= 2 sigma, else
/// the derived coefficients evaluated at omega = r.
inline PlanConstants plan_constants(const GaussianModel &m, double r) {
  if (!m.explicit_regime())
    throw ConfigError(
        "plan constants are only certified for beta/4 <= sigma <= beta/2 <= 1; "
        "supply (a, b, D) overrides");
  if (r <= 2 * m.sigma) {
    double P = 1.0 + m.sigma / m.beta * 2.0 * std::sqrt(2 * kPi);
    return {m.beta / 8.0, 2 * kPi * kPi * m.sigma * m.sigma,
            40000.0 * (2.0 + 16.0 / m.beta) * P * P, "closed-form"};
  }
  return derived_constants(m, r, decay_constants(m));
}

struct GridPlan {
  enum class Variant { KnownPartition, DetectedPartition };
  Variant variant = Variant::KnownPartition;
  double h = 0.0;
  long H = 0;
  long N = 0;
  double noise_budget = 0.0;
  double a = 0.0, b = 0.0, D = 0.0;
  std::string constants_source;
  double epsilon = 0.0;
  double J_minus_1 = 0.0;
  double c_inf = 0.0;
  double s = 0.0;
  double r = 0.0;
  double log_arg = 0.0;  // argument X of log(X)
  double beta = 0.0;
  double sigma = 0.0;

  Grid grid() const { return Grid(beta, h, N, H); }
  long N_base() const { return static_cast<long>(std::ceil(2.0 / beta * (s + r / 2.0))); }
  long margin() const { return N - N_base(); }

  /// Re-checks the three grid inequalities after rounding.
  bool satisfied() const {
    double L = std::log(log_arg);
    return 1.0 / h >= sigma * std::log(log_arg + 1.0) &&
           static_cast<double>(H) >= (1.0 / h) * std::sqrt(L / b) &&
           static_cast<double>(N) >= static_cast<double>(N_base()) + L / a;
  }
};

namespace detail {
inline GridPlan make_plan(const GaussianModel &m, double r, double s, double eps, double arg,
                          double c_inf, double jm1, GridPlan::Variant v,
                          const PlanConstants &pc) {
  GridPlan g;
  g.variant = v;
  g.a = pc.a;
  g.b = pc.b;
  g.D = pc.D;
  g.constants_source = pc.source;
  g.epsilon = eps;
  g.J_minus_1 = jm1;
  g.c_inf = c_inf;
  g.s = s;
  g.r = r;
  g.beta = m.beta;
  g.sigma = m.sigma;
  g.log_arg = arg;
  const double L = std::log(arg);
  if (!(L > 0.0)) throw ConfigError("select_grid_params: log argument must exceed 1");
  g.h = 1.0 / (m.sigma * std::log(arg + 1.0)) * (1.0 - 1e-12);
  g.H = static_cast<long>(std::ceil((1.0 / g.h) * std::sqrt(L / pc.b)));
  g.N = g.N_base() + static_cast<long>(std::ceil(L / pc.a));
  if (v == GridPlan::Variant::KnownPartition)
    g.noise_budget = eps / (4.0 * g.h * jm1 * pc.D);
  else
    g.noise_budget = eps * r / (16.0 * g.h * pc.D * s);
  return g;
}

inline void check_plan_inputs(double r, double s, double eps, double c_inf) {
  if (!(r > 0.0) || !(s > 0.0) || !(eps > 0.0) || !(c_inf > 0.0))
    throw ConfigError("select_grid_params: r, s, eps, c_inf must be positive");
}
}  // namespace detail

/// Grid for a known partition with J points: 1/h >= sigma log(X + 1),
/// H >= (1/h) sqrt(log(X)/b), N >= ceil((2/beta)(s + r/2)) + log(X)/a with
/// X = 4 D c_inf^2 (J - 1) / eps; budget eps / (4 h (J - 1) D).
inline GridPlan select_grid_params(const GaussianModel &m, double r, double s, double gamma,
                                   double eps, long J, double c_inf,
                                   std::optional<PlanConstants> overrides = std::nullopt) {
  detail::check_plan_inputs(r, s, eps, c_inf);
  if (J < 2) throw ConfigError("select_grid_params: J must be >= 2");
  if (!(gamma > 0.0)) throw ConfigError("select_grid_params: gamma must be positive");
  PlanConstants pc = overrides ? *overrides : plan_constants(m, r);
  double jm1 = static_cast<double>(J - 1);
  double arg = 4.0 * pc.D * c_inf * c_inf * jm1 / eps;
  return detail::make_plan(m, r, s, eps, arg, c_inf, jm1, GridPlan::Variant::KnownPartition, pc);
}

/// Grid for detected partitions: X = 16 D L^2 s / (eps r), budget
/// eps r / (16 h D s).
inline GridPlan select_grid_params_detected(const GaussianModel &m, double r, double s,
                                            double eps, double bound_L,
                                            std::optional<PlanConstants> overrides = std::nullopt) {
  detail::check_plan_inputs(r, s, eps, bound_L);
  PlanConstants pc = overrides ? *overrides : plan_constants(m, r);
  double arg = 16.0 * pc.D * bound_L * bound_L * s / (eps * r);
  return detail::make_plan(m, r, s, eps, arg, bound_L, 4.0 * s / r,
                           GridPlan::Variant::DetectedPartition, pc);
}

/// Plan with J - 1 replaced by the partition bound 4 s / r.
inline GridPlan growth_plan(double s, double eps, double c_inf, const GaussianModel &m, double r,
                            std::optional<PlanConstants> overrides = std::nullopt) {
  detail::check_plan_inputs(r, s, eps, c_inf);
  PlanConstants pc = overrides ? *overrides : plan_constants(m, r);
  double jm1 = 4.0 * s / r;
  double arg = 4.0 * pc.D * c_inf * c_inf * jm1 / eps;
  return detail::make_plan(m, r, s, eps, arg, c_inf, jm1, GridPlan::Variant::KnownPartition, pc);
}

/// Number of samples (2N + 1)(2H + 1) of growth_plan.
inline long sample_count(double s, double eps, double c_inf, const GaussianModel &m, double r,
                         std::optional<PlanConstants> overrides = std::nullopt) {
  auto g = growth_plan(s, eps, c_inf, m, r, overrides);
  return (2 * g.N + 1) * (2 * g.H + 1);
}

/// N(s) / [log(s c^2 / eps)^{3/2} (s + log(s c^2 / eps))].
inline double growth_ratio(double s, double eps, double c_inf, const GaussianModel &m, double r,
                           std::optional<PlanConstants> overrides = std::nullopt) {
  double l = std::log(s * c_inf * c_inf / eps);
  return static_cast<double>(sample_count(s, eps, c_inf, m, r, overrides)) /
         (std::pow(l, 1.5) * (s + l));
}

}  // namespace gaborpr

#endif  // GABORPR_SAMPLING_HPP_
