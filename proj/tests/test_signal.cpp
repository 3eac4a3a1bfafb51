// tests/test_signal.cpp

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

#include <boost/math/quadrature/gauss.hpp>

#include "gaborpr/signal.hpp"

using namespace gaborpr;

namespace {

const GaussianModel kStd(1.0 / std::sqrt(2 * kPi), 1.0);

SIVSignal random_signal(std::mt19937_64 &rng, const GaussianModel &m, int len) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(len);
  for (auto &v : c) v = {g(rng), g(rng)};
  return SIVSignal(m, -len / 2, c);
}

}  // namespace

TEST(Signal, EvalBasics) {
  SIVSignal f(kStd, 0, {1.0});
  EXPECT_DOUBLE_EQ(f(0.0).real(), 1.0);
  SIVSignal fpm(kStd, -1, {1.0, 0.0, 1.0});
  EXPECT_NEAR(fpm(0.0).real(), 2 * std::exp(-kPi), 1e-15);
  std::mt19937_64 rng(1);
  auto g = random_signal(rng, kStd, 6);
  cplx a(0.3, -1.2);
  auto ga = g.scaled(a);
  for (double t : {-2.0, -0.3, 0.0, 1.7}) EXPECT_LT(std::abs(ga(t) - a * g(t)), 1e-14);
  EXPECT_THROW(SIVSignal(kStd, 0, {0.0, 0.0}), ArgumentError);
  EXPECT_THROW(SIVSignal(kStd, 0, {}), ArgumentError);
}

TEST(Gabor, ClosedFormAndPhaseInvariance) {
  SIVSignal f(kStd, 0, {1.0});
  EXPECT_NEAR(std::abs(gabor_transform(f, 0, 0)), 1 / std::sqrt(2.0), 1e-15);
  std::mt19937_64 rng(2);
  auto g = random_signal(rng, kStd, 5);
  auto gp = g.scaled(std::polar(1.0, 0.77));
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    double x = u(rng), t = u(rng);
    EXPECT_NEAR(std::abs(gabor_transform(gp, x, t)), std::abs(gabor_transform(g, x, t)), 1e-13);
  }
}

TEST(Gabor, MatchesQuadrature) {
  std::mt19937_64 rng(3);
  auto f = random_signal(rng, kStd, 5);
  auto g = as_generic(f);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    double x = u(rng), t = u(rng);
    auto q = gabor_quadrature(g, kStd, x, t, 1e-12);
    EXPECT_LT(std::abs(q.value - gabor_transform(f, x, t)), 1e-9);
  }
}

TEST(Spectrogram, FactorizationMatchesClosedForm) {
  std::mt19937_64 rng(4);
  for (auto m : {kStd, GaussianModel(0.4, 0.8), GaussianModel(1.0, 1.0)}) {
    auto f = random_signal(rng, m, 7);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 100; ++i) {
      double x = u(rng), t = u(rng);
      double a = spectrogram(f, x, t), b = std::norm(gabor_transform(f, x, t));
      EXPECT_LE(std::abs(a - b), 1e-10 * std::max(b, 1e-300) + 1e-280);
      EXPECT_GE(a, 0.0);
    }
  }
}

TEST(Spectrogram, CoefficientBound) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ph(0, 2 * kPi), u(-5, 5);
  for (auto m : {kStd, GaussianModel(0.3, 1.0)}) {
    std::vector<cplx> c(9);
    for (auto &v : c) v = std::polar(1.0, ph(rng));
    SIVSignal f(m, -4, c);
    for (int i = 0; i < 10; ++i) {
      auto sc = spectrogram_coeffs(f, u(rng));
      for (long l = -sc.l_max; l <= sc.l_max; ++l)
        EXPECT_LE(std::abs(sc.at(l)), f.c_inf() * f.c_inf() * spectrogram_envelope(m, l) + 1e-15);
    }
  }
}

TEST(Tensor, CoefficientsAndExpansion) {
  SIVSignal one(kStd, 0, {1.0});
  auto t0 = tensor_coeffs(one, 0.0);
  ASSERT_EQ(t0.d.size(), 1u);
  EXPECT_DOUBLE_EQ(t0.at(0).real(), 1.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (auto m : {kStd, GaussianModel(0.4, 0.8)}) {
    auto f = random_signal(rng, m, 6);
    for (int i = 0; i < 20; ++i) {
      double w = u(rng), t = u(rng);
      auto tc = tensor_coeffs(f, w);
      EXPECT_LT(std::abs(tensor_expand_eval(tc, m, t) - tensor_eval(f, w, t)), 1e-10);
      for (long l = tc.l_min; l <= tc.l_max(); ++l) {
        double bound = 0;
        for (long n = f.n_min(); n <= f.n_max(); ++n) bound += tensor_weight(n, l - n, w, m);
        EXPECT_LE(std::abs(tc.at(l)), f.c_inf() * f.c_inf() * bound * (1 + 1e-12));
      }
    }
  }
}

TEST(Tensor, Identities) {
  std::mt19937_64 rng(7);
  auto f = random_signal(rng, kStd, 5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 20; ++i) {
    double w = u(rng), t = u(rng), p = u(rng);
    EXPECT_NEAR(tensor_eval(f, 0.0, t).real(), std::norm(f(t)), 1e-14);
    EXPECT_LT(std::abs(tensor_eval(f, -w, t) - std::conj(tensor_eval(f, w, t + w))), 1e-14);
    cplx fp = f(p);
    cplx tau = fp / std::abs(fp);
    cplx rec = tau / std::sqrt(tensor_eval(f, 0.0, p).real()) * std::conj(tensor_eval(f, w, p + w));
    EXPECT_LT(std::abs(rec - f(p + w)), 1e-12 * std::max(1.0, std::abs(f(p + w))));
  }
}

TEST(GenericSpectrogram, OracleEquivalenceAndZero) {
  std::mt19937_64 rng(8);
  auto f = random_signal(rng, kStd, 5);
  auto g = as_generic(f);
  const double qt = 1e-11;
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 10; ++i) {
    double x = u(rng), t = u(rng);
    EXPECT_NEAR(generic_spectrogram(g, kStd, x, t, qt), spectrogram(f, x, t), 10 * qt);
  }
  GenericSignal zero{[](double) { return cplx(0.0); }, 1.0, {}};
  EXPECT_EQ(generic_spectrogram(zero, kStd, 0.2, 0.4, qt), 0.0);
  EXPECT_THROW(generic_spectrogram(zero, kStd, 0, 0, 0.0), ArgumentError);
}

TEST(GenericSpectrogram, SplineAtOriginFixedGauss) {
  GaussianModel m(0.1, 0.1);
  LinearSpline s{{-5, -3, -1, 0, 2, 5}, {0.0, cplx(1, 1), cplx(-0.5, 2), 1.0, cplx(0, -1), 0.0}};
  auto g = as_generic(s);
  using GL = boost::math::quadrature::gauss<double, 30>;
  cplx ref = 0.0;
  for (std::size_t i = 0; i + 1 < s.knots.size(); ++i) {
    double a = s.knots[i], b = s.knots[i + 1];
    int sub = 40;
    for (int k = 0; k < sub; ++k) {
      double lo = a + (b - a) * k / sub, hi = a + (b - a) * (k + 1) / sub;
      ref += GL::integrate([&](double u) { return s(u) * gaussian(u, m.sigma); }, lo, hi);
    }
  }
  EXPECT_NEAR(generic_spectrogram(g, m, 0.0, 0.0, 1e-12), std::norm(ref), 1e-11);
}

TEST(FourierIdentity, SpectrogramTransformEqualsTensorProduct) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int s = 0; s < 2; ++s) {
    auto f = random_signal(rng, kStd, 5);
    for (int i = 0; i < 5; ++i) {
      double x = u(rng), w = u(rng);
      auto sc = spectrogram_coeffs(f, x);
      QuadOptions q{1e-11, 0.1};
      auto lhs = integrate(
          [&](double t) {
            return spectrogram_from_coeffs(sc, kStd, t) * std::polar(1.0, -2 * kPi * w * t);
          },
          -8, 8, q);
      auto rhs = integrate(
          [&](double t) { return tensor_eval(f, w, t) * phi_omega(t - x, w, kStd); },
          f.lo(), f.hi(), QuadOptions{1e-11, 0.2});
      EXPECT_LT(std::abs(lhs.value - rhs.value), 1e-7);
    }
  }
}
