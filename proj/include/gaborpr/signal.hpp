// gaborpr/signal.hpp

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

#ifndef GABORPR_SIGNAL_HPP_
#define GABORPR_SIGNAL_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "gaborpr/errors.hpp"
#include "gaborpr/quadrature.hpp"
#include "gaborpr/special_functions.hpp"

namespace gaborpr {

/// Gaussians beyond this many standard deviations are zero in double.
inline constexpr double kGaussReach = 39.0;

/// f = sum_n c_n phi(. - beta n), n = n_min .. n_min + len - 1.
class SIVSignal {
 public:
  SIVSignal() = default;
  SIVSignal(GaussianModel model, long n_min, std::vector<cplx> coeffs)
      : model_(model), n_min_(n_min), c_(std::move(coeffs)) {
    if (c_.empty()) throw ArgumentError("SIVSignal: empty coefficient array");
    c_inf_ = 0.0;
    for (auto &v : c_) c_inf_ = std::max(c_inf_, std::abs(v));
    if (!(c_inf_ > 0.0)) throw ArgumentError("SIVSignal: all coefficients are zero");
  }

  const GaussianModel &model() const { return model_; }
  long n_min() const { return n_min_; }
  long n_max() const { return n_min_ + static_cast<long>(c_.size()) - 1; }
  const std::vector<cplx> &coeffs() const { return c_; }
  cplx c(long n) const {
    if (n < n_min_ || n > n_max()) return 0.0;
    return c_[static_cast<std::size_t>(n - n_min_)];
  }
  double c_inf() const { return c_inf_; }

  /// Interval outside of which f vanishes in double precision.
  double lo() const { return model_.beta * n_min_ - kGaussReach * model_.sigma; }
  double hi() const { return model_.beta * n_max() + kGaussReach * model_.sigma; }

  cplx operator()(double t) const {
    const double s = model_.sigma, b = model_.beta;
    long a = std::max(n_min_, static_cast<long>(std::floor((t - kGaussReach * s) / b)));
    long z = std::min(n_max(), static_cast<long>(std::ceil((t + kGaussReach * s) / b)));
    cplx sum = 0.0;
    for (long n = a; n <= z; ++n) sum += c(n) * gaussian(t - b * n, s);
    return sum;
  }

  SIVSignal scaled(cplx alpha) const {
    std::vector<cplx> d = c_;
    for (auto &v : d) v *= alpha;
    return SIVSignal(model_, n_min_, std::move(d));
  }

 private:
  GaussianModel model_;
  long n_min_ = 0;
  std::vector<cplx> c_;
  double c_inf_ = 0.0;
};

inline cplx eval(const SIVSignal &f, double t) { return f(t); }

/// Gabor transform of phi in closed form:
/// sigma sqrt(pi) e^{-x^2/(4 sigma^2)} e^{-pi i x t} e^{-pi^2 sigma^2 t^2}.
inline cplx gabor_phi(double x, double t, const GaussianModel &m) {
  const double s = m.sigma;
  double mag = s * std::sqrt(kPi) * std::exp(-x * x / (4 * s * s) - kPi * kPi * s * s * t * t);
  return std::polar(mag, -kPi * x * t);
}

/// Gf(x, t) = sum_k c_k e^{-2 pi i beta k t} G phi(x - beta k, t).
inline cplx gabor_transform(const SIVSignal &f, double x, double t) {
  const auto &m = f.model();
  cplx sum = 0.0;
  for (long k = f.n_min(); k <= f.n_max(); ++k) {
    double u = x - m.beta * k;
    if (std::abs(u) > 2.0 * kGaussReach * m.sigma) continue;
    sum += f.c(k) * std::polar(1.0, -2.0 * kPi * m.beta * k * t) * gabor_phi(u, t, m);
  }
  return sum;
}

/// Coefficients b_l(x) of the trigonometric factor S_x(t) = sum_l b_l e^{pi i beta l t}.
struct SpectrogramCoeffs {
  double x = 0.0;
  long l_max = 0;            // b_l for l = -l_max .. l_max
  std::vector<cplx> b;       // index l + l_max
  double sigma_prime = 0.0;  // 1 / (2 pi sigma)

  cplx at(long l) const {
    if (l < -l_max || l > l_max) return 0.0;
    return b[static_cast<std::size_t>(l + l_max)];
  }
};

/// Envelope factor (1 + (sigma/beta) sqrt(2 pi)) of |b_l| / ||c||^2.
inline double spectrogram_envelope(const GaussianModel &m, long l) {
  double r = m.beta * l / m.sigma;
  return (1.0 + m.sigma / m.beta * std::sqrt(2 * kPi)) * std::exp(-r * r / 8.0);
}

/// b_l(x) = sum_{j-k=l} c_k conj(c_j) e^{-beta^2 l^2 / (8 sigma^2)}
/// phi(x - beta (k + j) / 2); l truncated once the envelope is below 1e-14.
inline SpectrogramCoeffs spectrogram_coeffs(const SIVSignal &f, double x) {
  const auto &m = f.model();
  SpectrogramCoeffs out;
  out.x = x;
  out.sigma_prime = 1.0 / (2 * kPi * m.sigma);
  long len = f.n_max() - f.n_min();
  long lcut = 0;
  while (lcut < len && spectrogram_envelope(m, lcut + 1) >= 1e-14) ++lcut;
  out.l_max = lcut;
  out.b.assign(static_cast<std::size_t>(2 * lcut + 1), 0.0);
  for (long l = 0; l <= lcut; ++l) {
    double damp = std::exp(-m.beta * m.beta * l * l / (8 * m.sigma * m.sigma));
    cplx s = 0.0;
    for (long k = f.n_min(); k + l <= f.n_max(); ++k) {
      long j = k + l;
      double u = x - m.beta * 0.5 * (k + j);
      if (std::abs(u) > kGaussReach * m.sigma) continue;
      s += f.c(k) * std::conj(f.c(j)) * gaussian(u, m.sigma);
    }
    s *= damp;
    out.b[static_cast<std::size_t>(lcut + l)] = s;
    out.b[static_cast<std::size_t>(lcut - l)] = std::conj(s);
  }
  return out;
}

/// pi sigma^2 phi^{sigma'}(t) S_x(t) for precomputed coefficients; clamped at 0.
inline double spectrogram_from_coeffs(const SpectrogramCoeffs &sc, const GaussianModel &m,
                                      double t) {
  double s = sc.at(0).real();
  for (long l = 1; l <= sc.l_max; ++l)
    s += 2.0 * (sc.at(l) * std::polar(1.0, kPi * m.beta * l * t)).real();
  double v = kPi * m.sigma * m.sigma * gaussian(t, sc.sigma_prime) * s;
  return v < 0.0 ? 0.0 : v;
}

/// |Gf(x, t)|^2 via the factorization.
inline double spectrogram(const SIVSignal &f, double x, double t) {
  return spectrogram_from_coeffs(spectrogram_coeffs(f, x), f.model(), t);
}

/// f_omega = sum_l d_l phi_omega(. - beta l / 2), l = l_min .. l_min + len - 1.
struct TensorCoeffs {
  double omega = 0.0;
  long l_min = 0;
  std::vector<cplx> d;

  cplx at(long l) const {
    long i = l - l_min;
    if (i < 0 || i >= static_cast<long>(d.size())) return 0.0;
    return d[static_cast<std::size_t>(i)];
  }
  long l_max() const { return l_min + static_cast<long>(d.size()) - 1; }
};

/// A(n, k) = e^{-(beta (n - k) + omega)^2 / (4 sigma^2)} e^{omega^2 / (4 sigma^2)}.
inline double tensor_weight(long n, long k, double omega, const GaussianModel &m) {
  double u = m.beta * (n - k) + omega;
  double s2 = 4 * m.sigma * m.sigma;
  return std::exp((omega * omega - u * u) / s2);
}

/// d_l = sum_{n + k = l} A(n, k) c_n conj(c_k).
inline TensorCoeffs tensor_coeffs(const SIVSignal &f, double omega) {
  TensorCoeffs tc;
  tc.omega = omega;
  tc.l_min = 2 * f.n_min();
  tc.d.assign(static_cast<std::size_t>(2 * (f.n_max() - f.n_min()) + 1), 0.0);
  const auto &m = f.model();
  for (long n = f.n_min(); n <= f.n_max(); ++n)
    for (long k = f.n_min(); k <= f.n_max(); ++k)
      tc.d[static_cast<std::size_t>(n + k - tc.l_min)] +=
          tensor_weight(n, k, omega, m) * f.c(n) * std::conj(f.c(k));
  return tc;
}

/// sum_l d_l phi_omega(t - beta l / 2).
inline cplx tensor_expand_eval(const TensorCoeffs &tc, const GaussianModel &m, double t) {
  cplx s = 0.0;
  for (long l = tc.l_min; l <= tc.l_max(); ++l)
    s += tc.at(l) * phi_omega(t - 0.5 * m.beta * l, tc.omega, m);
  return s;
}

/// Signal given only through an evaluator; zero outside [-support_radius,
/// support_radius]. Breakpoints mark kinks for quadrature.
struct GenericSignal {
  std::function<cplx(double)> f;
  double support_radius = 0.0;
  std::vector<double> breakpoints;

  cplx operator()(double t) const {
    if (std::abs(t) > support_radius) return 0.0;
    return f(t);
  }
};

inline GenericSignal as_generic(const SIVSignal &s) {
  double r = std::max(std::abs(s.lo()), std::abs(s.hi()));
  return GenericSignal{[s](double t) { return s(t); }, r, {}};
}

/// f(t - omega) conj(f(t)).
template <typename Signal>
cplx tensor_eval(const Signal &f, double omega, double t) {
  return f(t - omega) * std::conj(f(t));
}

/// Continuous piecewise-linear function through (knots[i], values[i]),
/// zero outside [knots.front(), knots.back()].
struct LinearSpline {
  std::vector<double> knots;
  std::vector<cplx> values;

  cplx operator()(double t) const {
    if (knots.size() < 2 || t < knots.front() || t > knots.back()) return 0.0;
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(std::max<long>(1, it - knots.begin())) - 1;
    if (i + 1 >= knots.size()) return values.back();
    double w = (t - knots[i]) / (knots[i + 1] - knots[i]);
    return (1.0 - w) * values[i] + w * values[i + 1];
  }
};

inline GenericSignal as_generic(const LinearSpline &s) {
  double r = std::max(std::abs(s.knots.front()), std::abs(s.knots.back()));
  return GenericSignal{[s](double t) { return s(t); }, r, s.knots};
}

/// Band-limited series sum_n c_n sinc(bandwidth t - n), cut at decay_radius.
struct SincSeries {
  double bandwidth = 1.0;
  long n_min = 0;
  std::vector<cplx> coeffs;
  double decay_radius = 0.0;

  cplx operator()(double t) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      double u = kPi * (bandwidth * t - (n_min + static_cast<long>(i)));
      s += coeffs[i] * (std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u);
    }
    return s;
  }
};

inline GenericSignal as_generic(const SincSeries &s) {
  return GenericSignal{[s](double t) { return s(t); }, s.decay_radius, {}};
}

/// Quadrature Gabor transform
/// int g(u) phi(u - x) e^{-2 pi i t u} du over the window cut at 12 sigma.
inline QuadResult<cplx> gabor_quadrature(const GenericSignal &g, const GaussianModel &m,
                                         double x, double t, double abs_tol) {
  double lo = std::max(-g.support_radius, x - 12.0 * m.sigma);
  double hi = std::min(g.support_radius, x + 12.0 * m.sigma);
  if (!(hi > lo)) return {};
  std::vector<double> br{lo};
  for (double b : g.breakpoints)
    if (b > lo && b < hi) br.push_back(b);
  br.push_back(hi);
  QuadOptions q;
  q.abs_tol = abs_tol;
  q.panel = std::min(0.5 * m.sigma, 0.25 / (std::abs(t) + 1e-300));
  auto integrand = [&](double u) {
    return g(u) * gaussian(u - x, m.sigma) * std::polar(1.0, -2.0 * kPi * t * u);
  };
  return integrate_pieces(integrand, br, q);
}

/// |Gg(x, t)|^2 by adaptive quadrature; absolute error at most quad_tol.
inline double generic_spectrogram(const GenericSignal &g, const GaussianModel &m, double x,
                                  double t, double quad_tol) {
  if (!(quad_tol > 0.0)) throw ArgumentError("generic_spectrogram: quad_tol must be > 0");
  double tol = 0.25 * quad_tol;
  auto r = gabor_quadrature(g, m, x, t, tol);
  double a = std::abs(r.value);
  if (2 * a * tol + tol * tol > quad_tol) {
    tol = quad_tol / (4.0 * a + 4.0);
    r = gabor_quadrature(g, m, x, t, tol);
  }
  return std::norm(r.value);
}

}  // namespace gaborpr

#endif  // GABORPR_SIGNAL_HPP_
