// gaborpr/special_functions.hpp

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

#ifndef GABORPR_SPECIAL_FUNCTIONS_HPP_
#define GABORPR_SPECIAL_FUNCTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "gaborpr/errors.hpp"

namespace gaborpr {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Window standard deviation `sigma` and lattice step `beta`.
struct GaussianModel {
  double sigma = 1.0;
  double beta = 1.0;

  GaussianModel() = default;
  GaussianModel(double s, double b) : sigma(s), beta(b) {
    if (!(s > 0.0) || !(b > 0.0) || !std::isfinite(s) || !std::isfinite(b))
      throw DomainError("GaussianModel: sigma and beta must be positive");
  }

  /// beta/4 <= sigma <= beta/2 <= 1.
  bool explicit_regime() const {
    return beta / 4.0 <= sigma && sigma <= beta / 2.0 && beta / 2.0 <= 1.0;
  }
  /// Nome of the tensor-product dual, exp(-beta^2 / (8 sigma^2)).
  double tensor_nome() const { return std::exp(-beta * beta / (8.0 * sigma * sigma)); }
};

/// exp(-t^2 / (2 sigma^2)).
inline double gaussian(double t, double sigma) {
  return std::exp(-t * t / (2.0 * sigma * sigma));
}

namespace detail {
inline void check_nome(double c, const char *who) {
  if (!(c > 0.0 && c < 1.0))
    throw DomainError(std::string(who) + ": nome must lie in (0,1)");
}
inline void check_tol(double tol, const char *who) {
  if (!(tol > 0.0)) throw ArgumentError(std::string(who) + ": tolerance must be > 0");
}
}  // namespace detail

/// theta_3(x, c) for real x. Uses 1 + 2 sum c^{n^2} cos(2 n x) when
/// c <= e^{-pi}; for larger nomes the cosine series cancels badly near
/// x = pi/2, so the positive Poisson-dual form
/// sqrt(pi/lambda) sum_m e^{-(x - m pi)^2 / lambda}, c = e^{-lambda}, is used.
inline double theta3_real(double x, double c, double tol = 1e-14) {
  detail::check_nome(c, "theta3");
  detail::check_tol(tol, "theta3");
  const double lc = std::log(c);
  if (-lc < kPi) {
    const double lam = -lc;
    double y = std::remainder(x, kPi);  // in [-pi/2, pi/2]
    double sum = std::exp(-y * y / lam);
    for (long m = 1; m < 10000000; ++m) {
      double a = y - m * kPi, b = y + m * kPi;
      double ta = std::exp(-a * a / lam), tb = std::exp(-b * b / lam);
      sum += ta + tb;
      if (ta + tb < tol * sum) return std::sqrt(kPi / lam) * sum;
    }
    throw NumericError("theta3: series did not terminate");
  }
  double sum = 1.0;
  for (long n = 1; n < 10000000; ++n) {
    double env = 2.0 * std::exp(lc * static_cast<double>(n) * n);
    sum += env * std::cos(2.0 * n * x);
    if (env < tol * std::abs(sum)) return sum;
  }
  throw NumericError("theta3: series did not terminate");
}

/// theta_3(z, c) = sum_n c^{n^2} e^{2 n i z}.
inline cplx theta3(cplx z, double c, double tol = 1e-14) {
  detail::check_nome(c, "theta3");
  detail::check_tol(tol, "theta3");
  if (z.imag() == 0.0) return {theta3_real(z.real(), c, tol), 0.0};
  const double lc = std::log(c);
  const double y = std::abs(z.imag());
  const double peak = y / (-lc);
  cplx sum = 1.0;
  const cplx i2z = cplx(0.0, 2.0) * z;
  for (long n = 1; n < 10000000; ++n) {
    double dn = static_cast<double>(n);
    double q = lc * dn * dn;
    sum += std::exp(q + dn * i2z) + std::exp(q - dn * i2z);
    double env = 2.0 * std::exp(q + 2.0 * dn * y);
    if (dn > peak && env < tol * std::abs(sum)) return sum;
  }
  throw NumericError("theta3: series did not terminate");
}

/// 2 c^{1/4} prod_{n>=1} (1 - c^{2n})^3; equal to xi(c) by Jacobi's triple
/// product for the derivative of theta_1 at the origin.
inline double xi_product(double c) {
  detail::check_nome(c, "xi");
  double lp = 0.0;
  double c2 = c * c, q = c2;
  for (long n = 1; n < 100000000 && q > 1e-18; ++n, q *= c2) lp += std::log1p(-q);
  return 2.0 * std::pow(c, 0.25) * std::exp(3.0 * lp);
}

/// xi(c) = sum_{n in Z} (-1)^n (2n+1) c^{(n+1/2)^2}, summed as twice the
/// n >= 0 half. Falls back to the product form when the alternating series
/// loses more than three digits to cancellation.
inline double xi(double c, double tol = 1e-14) {
  detail::check_nome(c, "xi");
  const double lc = std::log(c);
  double sum = 0.0, mass = 0.0;
  bool done = false;
  for (long n = 0; n < 10000000; ++n) {
    double h = n + 0.5;
    double term = (2.0 * n + 1.0) * std::exp(lc * h * h);
    sum += (n % 2 == 0) ? term : -term;
    mass += term;
    // (2n+1) c^{(n+1/2)^2} decreases once n is past its single peak.
    double next = (2.0 * n + 3.0) * std::exp(lc * (h + 1.0) * (h + 1.0));
    if (next < term && next < tol * std::abs(sum)) {
      done = true;
      break;
    }
  }
  if (!done) throw NumericError("xi: series did not terminate");
  if (mass > 1e3 * std::abs(sum)) return xi_product(c);
  return 2.0 * sum;
}

/// 0.5 sqrt(pi / log(1/c)); the mass term of the coefficient envelope.
inline double recip_theta_mass(double c) {
  return 0.5 * std::sqrt(kPi / -std::log(c));
}

/// Fourier coefficients a_n of 1/theta_3(pi x, c), together with the
/// Gaussian generator they dualize.
struct DualGeneratorTable {
  double c = 0.0;
  double xi = 0.0;
  int M = 0;
  std::vector<double> coeffs;  // a_{-M..M}
  double sigma_g = 0.0;
  double beta_g = 0.0;
  double tail_tol = 0.0;

  double a(long n) const {
    if (n < -M || n > M) return 0.0;
    return coeffs[static_cast<std::size_t>(n + M)];
  }
  double abs_sum() const {
    double s = 0.0;
    for (double v : coeffs) s += std::abs(v);
    return s;
  }
  double abs_max() const {
    double s = 0.0;
    for (double v : coeffs) s = std::max(s, std::abs(v));
    return s;
  }
};

/// Envelope (2/|xi|) c^{|n|} (c^{1/4} + mass(c)) bounding |a_n|.
inline double recip_theta_envelope(double c, double xi_c, long n) {
  return 2.0 / std::abs(xi_c) * std::pow(c, static_cast<double>(std::labs(n))) *
         (std::pow(c, 0.25) + recip_theta_mass(c));
}

/// a_n = (-1)^n (2/xi) sum_{m>=0} (-1)^m c^{(m+1/2)(2|n|+m+1/2)}, |n| <= M,
/// with M the first index where the envelope drops below `tail_tol`.
inline DualGeneratorTable recip_theta_coeffs(double c, double tail_tol = 1e-12) {
  detail::check_nome(c, "recip_theta_coeffs");
  detail::check_tol(tail_tol, "recip_theta_coeffs");
  DualGeneratorTable t;
  t.c = c;
  t.tail_tol = tail_tol;
  t.xi = xi(c);
  const double lc = std::log(c);
  const double head = 2.0 / std::abs(t.xi) * (std::pow(c, 0.25) + recip_theta_mass(c));
  double m_real = std::log(tail_tol / head) / lc;
  if (!std::isfinite(m_real) || m_real > 1e7)
    throw NumericError("recip_theta_coeffs: truncation index out of range");
  long M = std::max(0L, static_cast<long>(std::floor(m_real)) + 1);
  while (M > 0 && head * std::exp(lc * (M - 1)) < tail_tol) --M;
  t.M = static_cast<int>(M);
  t.coeffs.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
  for (long n = 0; n <= M; ++n) {
    double inner = 0.0;
    for (long m = 0; m < 10000000; ++m) {
      double e = lc * (m + 0.5) * (2.0 * n + m + 0.5);
      double term = std::exp(e);
      inner += (m % 2 == 0) ? term : -term;
      if (term == 0.0 || term < 1e-18 * std::abs(inner)) break;
    }
    double an = 2.0 / t.xi * inner * ((n % 2 == 0) ? 1.0 : -1.0);
    t.coeffs[static_cast<std::size_t>(M + n)] = an;
    t.coeffs[static_cast<std::size_t>(M - n)] = an;
  }
  return t;
}

/// Table for the dual generator of phi^{sigma_g} on beta_g Z; the nome is
/// phi^{sigma_g}(beta_g / sqrt 2).
inline DualGeneratorTable dual_generator_mixture(double sigma_g, double beta_g,
                                                 double tail_tol = 1e-12) {
  if (!(sigma_g > 0.0) || !(beta_g > 0.0))
    throw DomainError("dual_generator_mixture: sigma_g and beta_g must be positive");
  double c = std::exp(-beta_g * beta_g / (4.0 * sigma_g * sigma_g));
  DualGeneratorTable t = recip_theta_coeffs(c, tail_tol);
  t.sigma_g = sigma_g;
  t.beta_g = beta_g;
  return t;
}

/// Table for the translates of phi_omega on (beta/2) Z.
inline DualGeneratorTable tensor_dual_table(const GaussianModel &m,
                                            double tail_tol = 1e-12) {
  return dual_generator_mixture(m.sigma / std::sqrt(2.0), m.beta / 2.0, tail_tol);
}

/// Dual generator (1/(sigma_g sqrt pi)) sum_n a_n phi^{sigma_g}(t + beta_g n).
/// Terms are generated outward from the nearest centre by a two-step
/// multiplicative recurrence until they underflow.
inline double dual_eval(const DualGeneratorTable &tb, double t) {
  const double s = tb.sigma_g, b = tb.beta_g;
  const double inv2s2 = 1.0 / (2.0 * s * s);
  long n0 = std::lround(-t / b);
  n0 = std::clamp<long>(n0, -tb.M, tb.M);
  double x0 = t + b * n0;
  double g0 = std::exp(-x0 * x0 * inv2s2);
  double sum = tb.a(n0) * g0;
  const double step = std::exp(-b * b / (s * s));
  // One sweep per direction; the recurrence is reseeded whenever the running
  // term is tiny or the ratio overflows, so clamped centres stay exact.
  auto sweep = [&](int dir) {
    const double db = dir * b;
    double g = g0, rho = std::exp(-(2.0 * x0 * db + b * b) * inv2s2);
    for (long n = n0 + dir; n >= -tb.M && n <= tb.M; n += dir) {
      double x = t + b * n;
      if (g < 1e-250 || !std::isfinite(rho)) {
        g = std::exp(-x * x * inv2s2);
        rho = std::exp(-(2.0 * x * db + b * b) * inv2s2);
      } else {
        g *= rho;
        rho *= step;
      }
      if (g == 0.0 && x * dir > 0.0) break;
      sum += tb.a(n) * g;
    }
  };
  sweep(+1);
  sweep(-1);
  return sum / (s * std::sqrt(kPi));
}

/// Inverse Fourier transform of Lambda for the tensor table:
/// (1/(sigma sqrt pi)) sum_n a_n e^{-(t + beta n / 2)^2 / sigma^2}.
inline double inv_fourier_lambda(const DualGeneratorTable &tensor_table, double t) {
  return dual_eval(tensor_table, t) / std::sqrt(2.0);
}

/// Dual of phi_omega on (beta/2) Z:
/// sqrt 2 e^{+omega^2 / (4 sigma^2)} (F^{-1} Lambda)(t - omega/2).
inline double dual_tensor_eval(double t, double omega, const GaussianModel &m,
                               const DualGeneratorTable &tensor_table) {
  double g = std::exp(omega * omega / (4.0 * m.sigma * m.sigma));
  return g * dual_eval(tensor_table, t - 0.5 * omega);
}

/// phi_omega(t) = phi(t - omega) phi(t).
inline double phi_omega(double t, double omega, const GaussianModel &m) {
  double u = t - omega;
  return std::exp(-(u * u + t * t) / (2.0 * m.sigma * m.sigma));
}

struct DecayConstants {
  double K = 0.0;
  double nu = 0.0;
  bool fitted = false;
};

/// |F^{-1} Lambda(t)| <= K e^{-nu |t|}. Explicit regime: (205/sigma, 1/4).
/// Elsewhere nu is a least-squares slope of log window maxima on [5, 30] and
/// K = 1.01 max |F^{-1} Lambda| e^{nu |t|} on [-30, 30].
inline DecayConstants decay_constants(const GaussianModel &m) {
  if (m.explicit_regime()) return {205.0 / m.sigma, 0.25, false};
  DualGeneratorTable tb = tensor_dual_table(m, 1e-300);
  const double w = m.beta;
  const double dt = std::min(m.beta, m.sigma) / 200.0;
  std::vector<double> xs, ys;
  auto collect = [&](double lo, double hi) {
    xs.clear();
    ys.clear();
    for (double a = lo; a + w <= hi + 1e-12; a += w) {
      double mx = 0.0;
      for (double t = a; t <= a + w; t += dt)
        mx = std::max(mx, std::abs(inv_fourier_lambda(tb, t)));
      if (mx > 1e-280) {
        xs.push_back(a + 0.5 * w);
        ys.push_back(std::log(mx));
      }
    }
  };
  collect(5.0, 30.0);
  if (xs.size() < 3) collect(w, 30.0);
  if (xs.size() < 2) throw NumericError("decay_constants: envelope fit has too few points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double nu = -slope;
  if (!(nu > 0.0)) throw NumericError("decay_constants: fitted rate is not positive");
  double K = 0.0;
  for (double t = -30.0; t <= 30.0; t += dt)
    K = std::max(K, std::abs(inv_fourier_lambda(tb, t)) * std::exp(nu * std::abs(t)));
  return {1.01 * K, nu, true};
}

/// Riesz lower bound (sigma/sqrt 2) phi(omega) theta_3(pi/2, phi(beta/2)) of
/// the translates of phi_omega on (beta/2) Z.
inline double riesz_lower_bound(const GaussianModel &m, double omega) {
  return m.sigma / std::sqrt(2.0) * gaussian(omega, m.sigma) *
         theta3_real(kPi / 2.0, gaussian(m.beta / 2.0, m.sigma));
}

/// 1-periodic function sigma beta sqrt(pi) theta_3(pi t, phi(beta / sqrt 2)).
inline double periodization(const GaussianModel &m, double t) {
  return m.sigma * m.beta * std::sqrt(kPi) *
         theta3_real(kPi * t, gaussian(m.beta / std::sqrt(2.0), m.sigma));
}

struct RieszBounds {
  double A = 0.0;
  double B = 0.0;
};

/// Closed-form bounds of periodization / beta: extremes of theta_3 at pi/2
/// and 0.
inline RieszBounds riesz_bounds(const GaussianModel &m) {
  double c = gaussian(m.beta / std::sqrt(2.0), m.sigma);
  double s = m.sigma * std::sqrt(kPi);
  return {s * theta3_real(kPi / 2.0, c), s * theta3_real(0.0, c)};
}

struct StabilityConstant {
  double value = 0.0;            // grid_sup + lipschitz_slack + truncation_bound
  double grid_sup = 0.0;
  double lipschitz_slack = 0.0;
  double truncation_bound = 0.0;
  int grid_points = 0;
};

/// sup_p sum_n |F^{-1} Lambda(p - beta n / 2)| over one period [0, beta/2).
inline StabilityConstant stability_constant_C(const GaussianModel &m,
                                              int grid_points = 10000) {
  if (grid_points < 1) throw ArgumentError("stability_constant_C: grid_points < 1");
  DualGeneratorTable tb = tensor_dual_table(m);
  const double half = m.beta / 2.0;
  // The truncated mixture vanishes (in double precision) beyond this radius.
  const double reach = tb.M * tb.beta_g + 39.0 * tb.sigma_g;
  const long kmax = static_cast<long>(std::ceil(reach / half)) + 1;
  StabilityConstant out;
  out.grid_points = grid_points;
  for (int i = 0; i < grid_points; ++i) {
    double p = half * i / grid_points;
    double s = 0.0;
    for (long k = -kmax; k <= kmax; ++k) s += std::abs(inv_fourier_lambda(tb, p - half * k));
    out.grid_sup = std::max(out.grid_sup, s);
  }
  // Dropped coefficients |n| > M, summed against the lattice of Gaussians.
  const double sps = m.sigma * std::sqrt(kPi);
  out.truncation_bound = 2.0 * recip_theta_envelope(tb.c, tb.xi, tb.M + 1) /
                         (1.0 - tb.c) * (2.0 * sps / m.beta + 1.0) / sps;
  double lip = tb.abs_sum() / (m.sigma * std::sqrt(kPi)) *
               (4.0 / m.beta + 4.0 * std::sqrt(2.0 / std::exp(1.0)) / m.sigma);
  out.lipschitz_slack = lip * 0.5 * half / grid_points;
  out.value = out.grid_sup + out.lipschitz_slack + out.truncation_bound;
  return out;
}

}  // namespace gaborpr

#endif  // GABORPR_SPECIAL_FUNCTIONS_HPP_
