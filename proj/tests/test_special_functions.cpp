// tests/test_special_functions.cpp

// Copyright 2026 The gaborpr Authors
//
// See ../LICENSE for clarification regarding multiple authors
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

#include <gtest/gtest.h>

#include <random>

#include "gaborpr/quadrature.hpp"
#include "gaborpr/special_functions.hpp"

using namespace gaborpr;

namespace {

// Plain partial sums, used as oracles.
cplx theta3_direct(cplx z, double c, int nmax) {
  cplx s = 0.0;
  for (int n = -nmax; n <= nmax; ++n)
    s += std::pow(c, double(n) * n) * std::exp(cplx(0, 2.0 * n) * z);
  return s;
}

double xi_direct(double c, int nmax) {
  double s = 0.0;
  for (int n = -nmax; n <= nmax; ++n)
    s += ((n % 2 == 0) ? 1.0 : -1.0) * (2.0 * n + 1.0) * std::pow(c, (n + 0.5) * (n + 0.5));
  return s;
}

}  // namespace

TEST(Theta3, ValueAtOriginMatchesPartialSum) {
  double v = theta3_real(0.0, 0.5);
  EXPECT_NEAR(v, 2.128937, 1e-6);
  EXPECT_NEAR(v, theta3_direct(0.0, 0.5, 10).real(), 1e-14);
}

TEST(Theta3, EvenAndPiPeriodic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uz(-10, 10), uc(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    double z = uz(rng), c = uc(rng);
    double v = theta3_real(z, c);
    EXPECT_NEAR(theta3_real(z + kPi, c), v, 1e-12 * std::abs(v));
    EXPECT_NEAR(theta3_real(-z, c), v, 1e-12 * std::abs(v));
  }
  for (int i = 0; i < 20; ++i) {
    double z = uz(rng);
    EXPECT_NEAR(theta3_real(z + kPi, 0.3), theta3_real(z, 0.3), 1e-13);
  }
}

TEST(Theta3, MinimumAtHalfPi) {
  for (double c : {0.2, 0.5}) {
    double best = 1e300, arg = -1;
    for (int i = 0; i <= 20000; ++i) {
      double t = kPi * i / 20000.0;
      double v = theta3_real(t, c);
      if (v < best) best = v, arg = t;
    }
    EXPECT_NEAR(arg, kPi / 2, 1e-3);
  }
}

TEST(Theta3, ComplexArgumentMatchesPartialSum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-3, 3), uy(-2, 2), uc(0.05, 0.7);
  for (int i = 0; i < 50; ++i) {
    cplx z(ux(rng), uy(rng));
    double c = uc(rng);
    cplx ref = theta3_direct(z, c, 80);
    EXPECT_LT(std::abs(theta3(z, c) - ref), 1e-12 * std::abs(ref));
  }
}

TEST(Theta3, Errors) {
  EXPECT_THROW(theta3_real(0.0, 1.0), DomainError);
  EXPECT_THROW(theta3_real(0.0, 0.0), DomainError);
  EXPECT_THROW(theta3(cplx(0.0, 1.0), -0.5), DomainError);
  EXPECT_THROW(theta3_real(0.0, 0.5, 0.0), ArgumentError);
}

TEST(Xi, ValueAndOracles) {
  EXPECT_NEAR(xi(0.5), 0.5490, 1e-3);
  EXPECT_NEAR(xi(0.5), xi_direct(0.5, 8), 1e-12);
  for (double c : {0.05, 0.2, 0.5, 0.7, 0.9}) {
    EXPECT_NEAR(xi(c), xi_product(c), 1e-12 * xi_product(c)) << c;
  }
  EXPECT_THROW(xi(1.5), DomainError);
}

TEST(Xi, PairingSymmetry) {
  double c = 0.37;
  for (int n = 0; n < 6; ++n) {
    int m = -(n + 1);
    double tn = ((n % 2 == 0) ? 1.0 : -1.0) * (2.0 * n + 1) * std::pow(c, (n + 0.5) * (n + 0.5));
    double tm = ((m % 2 == 0) ? 1.0 : -1.0) * (2.0 * m + 1) * std::pow(c, (m + 0.5) * (m + 0.5));
    EXPECT_NEAR(tn, tm, 1e-15);
  }
}

TEST(Xi, LowerBoundOnInterval) {
  for (int i = 0; i < 100; ++i) {
    double lc = -2.0 + 1.5 * i / 99.0;
    EXPECT_GE(xi(std::exp(lc)), 0.2);
  }
}

TEST(RecipTheta, SymmetrySignAndEnvelope) {
  for (double c : {0.1, std::exp(-0.5), 0.8}) {
    auto t = recip_theta_coeffs(c);
    ASSERT_GT(t.M, 0);
    for (int n = 0; n <= t.M; ++n) {
      EXPECT_EQ(t.a(n), t.a(-n));
      double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(t.a(n)) > 1e-280) {
        EXPECT_GT(sgn * t.a(n) * t.a(0), 0.0) << n;
      }
      EXPECT_LE(std::abs(t.a(n)), recip_theta_envelope(c, t.xi, n) * (1 + 1e-12));
    }
    EXPECT_LT(recip_theta_envelope(c, t.xi, t.M), t.tail_tol);
    EXPECT_GE(recip_theta_envelope(c, t.xi, t.M - 1), t.tail_tol);
  }
}

TEST(RecipTheta, FourierInversion) {
  const double sigma = 0.5, beta = 1.0;
  const double c = gaussian(beta / std::sqrt(2.0), sigma);
  auto t = recip_theta_coeffs(c);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    double x = u(rng);
    cplx s = 0.0;
    for (int n = -t.M; n <= t.M; ++n) s += t.a(n) * std::exp(cplx(0, 2 * kPi * beta * n * x));
    double th = theta3_direct(kPi * beta * x, c, 30).real();
    EXPECT_LT(std::abs(s * th - 1.0), 1e-10);
  }
}

TEST(DualGenerator, BiorthogonalGeneric) {
  const double sg = 1.0 / std::sqrt(4 * kPi), bg = 0.5;
  auto tb = dual_generator_mixture(sg, bg);
  QuadOptions q;
  q.abs_tol = 1e-11;
  q.panel = 0.25;
  for (int n = -5; n <= 5; ++n) {
    for (int k = -5; k <= 5; ++k) {
      if (std::abs(n - k) > 5) continue;
      auto f = [&](double t) { return gaussian(t - bg * n, sg) * dual_eval(tb, t - bg * k); };
      double v = integrate(f, -20, 20, q).value;
      EXPECT_NEAR(v, n == k ? 1.0 : 0.0, 1e-7) << n << "," << k;
    }
  }
}

TEST(DualGenerator, EvenAndNome) {
  GaussianModel m(0.4, 0.8);
  auto tb = tensor_dual_table(m);
  EXPECT_NEAR(tb.c, std::exp(-0.5), 1e-15);
  EXPECT_NEAR(m.tensor_nome(), std::exp(-0.5), 1e-15);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 30; ++i) {
    double t = u(rng);
    EXPECT_NEAR(dual_eval(tb, t), dual_eval(tb, -t), 1e-13);
  }
}

TEST(DualGenerator, TensorBiorthogonalAtNonzeroShift) {
  GaussianModel m(0.4, 0.8);
  auto tb = tensor_dual_table(m);
  QuadOptions q;
  q.abs_tol = 1e-11;
  q.panel = 0.2;
  for (double omega : {0.0, 0.3, -0.55}) {
    for (int n = -3; n <= 3; ++n) {
      for (int k = -3; k <= 3; ++k) {
        auto f = [&](double t) {
          return phi_omega(t - m.beta / 2 * n, omega, m) *
                 dual_tensor_eval(t - m.beta / 2 * k, omega, m, tb);
        };
        double v = integrate(f, -25, 25, q).value;
        EXPECT_NEAR(v, n == k ? 1.0 : 0.0, 1e-7) << omega << " " << n << "," << k;
      }
    }
  }
}

TEST(DualTensor, ReductionsAndSymmetry) {
  GaussianModel m(0.4, 0.8);
  auto tb = tensor_dual_table(m);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 20; ++i) {
    double t = u(rng), w = u(rng), s = u(rng);
    EXPECT_NEAR(dual_tensor_eval(t, 0.0, m, tb), std::sqrt(2.0) * inv_fourier_lambda(tb, t), 1e-13);
    EXPECT_NEAR(dual_tensor_eval(w / 2 + s, w, m, tb), dual_tensor_eval(w / 2 - s, w, m, tb),
                1e-12 * std::max(1.0, std::abs(dual_tensor_eval(w / 2 + s, w, m, tb))));
  }
}

TEST(DualTensor, ExplicitEnvelope) {
  GaussianModel m(0.4, 0.8);
  auto tb = tensor_dual_table(m);
  for (int i = -2000; i <= 2000; ++i) {
    double t = 0.01 * i;
    EXPECT_LE(std::abs(inv_fourier_lambda(tb, t)), 205.0 / m.sigma * std::exp(-std::abs(t) / 4));
  }
}

TEST(Decay, ExplicitValues) {
  auto a = decay_constants(GaussianModel(0.25, 1.0));
  EXPECT_DOUBLE_EQ(a.K, 820.0);
  EXPECT_DOUBLE_EQ(a.nu, 0.25);
  EXPECT_FALSE(a.fitted);
  auto b = decay_constants(GaussianModel(0.5, 1.0));
  EXPECT_DOUBLE_EQ(b.K, 410.0);
  EXPECT_DOUBLE_EQ(b.nu, 0.25);
}

TEST(Decay, FittedEnvelopeDominates) {
  GaussianModel m(1.0, 1.0);
  auto d = decay_constants(m);
  EXPECT_TRUE(d.fitted);
  EXPECT_GT(d.nu, 0.0);
  auto tb = tensor_dual_table(m, 1e-300);
  for (int i = -3000; i <= 3000; ++i) {
    double t = 0.01 * i;
    EXPECT_LE(std::abs(inv_fourier_lambda(tb, t)), d.K * std::exp(-d.nu * std::abs(t))) << t;
  }
}

TEST(Riesz, LowerBound) {
  GaussianModel m(0.4, 0.8);
  EXPECT_GT(riesz_lower_bound(m, 0.1), riesz_lower_bound(m, 0.2));
  EXPECT_GT(riesz_lower_bound(m, -0.3), riesz_lower_bound(m, 0.5));
  EXPECT_NEAR(riesz_lower_bound(m, 0.0),
              m.sigma / std::sqrt(2.0) * theta3_direct(kPi / 2, gaussian(0.4, 0.4), 20).real(),
              1e-14);
}

TEST(Riesz, PeriodizationWithinBounds) {
  for (auto m : {GaussianModel(0.4, 0.8), GaussianModel(1.0, 1.0), GaussianModel(0.3, 2.0)}) {
    auto rb = riesz_bounds(m);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 10000; ++i) {
      double v = periodization(m, i / 10000.0) / m.beta;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_NEAR(lo, rb.A, 1e-12 * rb.B);
    EXPECT_NEAR(hi, rb.B, 1e-12 * rb.B);
  }
}

TEST(StabilityConstant, ExplicitBoundAndPositivity) {
  GaussianModel m(0.4, 0.8);
  auto c = stability_constant_C(m);
  EXPECT_GT(c.value, 0.0);
  EXPECT_LE(c.value, 205.0 / m.sigma * (2.0 + 16.0 / m.beta));
  auto c1 = stability_constant_C(GaussianModel(1.0, 1.0), 2000);
  EXPECT_GT(c1.value, 0.0);
  EXPECT_TRUE(std::isfinite(c1.value));
}

TEST(StabilityConstant, GridRefinement) {
  GaussianModel m(0.5, 1.0);
  auto a = stability_constant_C(m, 10000);
  auto b = stability_constant_C(m, 20000);
  EXPECT_LT(std::abs(a.grid_sup - b.grid_sup), 1e-4 * b.grid_sup);
  EXPECT_LE(b.lipschitz_slack, a.lipschitz_slack);
}

TEST(Quadrature, ComplexAndErrors) {
  auto r = integrate([](double t) { return std::exp(cplx(-t * t, 3 * t)); }, -12, 12,
                     QuadOptions{1e-13, 0.5});
  cplx ref = std::sqrt(kPi) * std::exp(-9.0 / 4.0);
  EXPECT_LT(std::abs(r.value - ref), 1e-12);
  QuadOptions bad;
  bad.abs_tol = 0.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, bad), ArgumentError);
}
