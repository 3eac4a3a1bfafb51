// tests/test_sampling.cpp

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

#include "gaborpr/sampling.hpp"

using namespace gaborpr;

namespace {
const GaussianModel kStd(1.0 / std::sqrt(2 * kPi), 1.0);

SIVSignal random_signal(std::uint64_t seed, const GaussianModel &m, int len) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> c(len);
  for (auto &v : c) v = {g(rng), g(rng)};
  return SIVSignal(m, -len / 2, c);
}
}  // namespace

TEST(Sampling, NoiselessIsClosedForm) {
  auto f = random_signal(1, kStd, 5);
  Grid g(1.0, 0.25, 6, 8);
  auto S = sample_spectrogram(f, g);
  EXPECT_EQ(S.noise_inf_norm_actual, 0.0);
  for (long n = -g.N; n <= g.N; ++n)
    for (long k = -g.H; k <= g.H; ++k)
      EXPECT_NEAR(S.at(n, k), std::norm(gabor_transform(f, g.x(n), g.w(k))),
                  1e-12 * std::max(1.0, S.at(n, k)));
}

TEST(Sampling, DeterministicSeededNoise) {
  auto f = random_signal(2, kStd, 7);
  Grid g(1.0, 1.0 / 12, 40, 60);
  auto a = sample_spectrogram(f, g, NoiseSpec::gaussian(0.001, 42));
  auto b = sample_spectrogram(f, g, NoiseSpec::gaussian(0.001, 42));
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.grid.rows(), 81);
  EXPECT_EQ(a.grid.cols(), 121);
  EXPECT_EQ(a.values.size(), 81u * 121u);
  auto c = sample_spectrogram(f, g, NoiseSpec::gaussian(0.001, 43));
  EXPECT_NE(a.values, c.values);
}

TEST(Sampling, AdversarialRowsumMeetsDelta) {
  Grid g(1.0, 0.1, 10, 20);
  for (double d : {1e-3, 0.5, 7.0}) {
    auto eta = generate_noise(g, NoiseSpec::adversarial_rowsum(d, 5));
    double nrm = noise_inf_norm(eta, g.rows(), g.cols());
    EXPECT_LE(nrm, d);
    EXPECT_GT(nrm, d * (1 - 1e-12));
  }
}

TEST(NoiseNorm, Definition) {
  EXPECT_DOUBLE_EQ(noise_inf_norm({{1, -2}, {3, 0}}), 3.0);
  EXPECT_DOUBLE_EQ(noise_inf_norm({{0, 0}, {0, 0}}), 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> m(7 * 9);
  for (auto &v : m) v = u(rng);
  double brute = 0;
  for (int i = 0; i < 7; ++i) {
    double s = 0;
    for (int j = 0; j < 9; ++j) s += std::fabs(m[i * 9 + j]);
    if (s > brute) brute = s;
  }
  EXPECT_DOUBLE_EQ(noise_inf_norm(m, 7, 9), brute);
  EXPECT_THROW(noise_inf_norm(m, 5, 9), ArgumentError);
}

TEST(MixedNorm, Properties) {
  auto f = random_signal(4, kStd, 4), g = random_signal(5, kStd, 4);
  EXPECT_NEAR(mixed_norm(f, f, 0.5, INFINITY), 0.0, 1e-14);
  EXPECT_NEAR(mixed_norm(f, g, 0.5, INFINITY), mixed_norm(g, f, 0.5, INFINITY), 1e-10);
  auto e = random_signal(6, kStd, 4);
  for (double p : {1.0, 2.0, double(INFINITY)}) {
    double fg = mixed_norm(f, g, 0.5, p), ge = mixed_norm(g, e, 0.5, p), fe = mixed_norm(f, e, 0.5, p);
    EXPECT_LE(fe, fg + ge + 1e-9);
  }
  EXPECT_THROW(mixed_norm(f, g, 0.5, 0.5), ArgumentError);
  EXPECT_THROW(mixed_norm(f, g, 0.0, 1.0), ArgumentError);
}

TEST(MixedNorm, ScaledGaussianOracle) {
  SIVSignal f(kStd, 0, {1.0}), g(kStd, 0, {2.0});
  double best = 0;
  for (int n = -40; n <= 40; ++n) {
    double x = 0.5 * n;
    // |G phi(x, t)|^2 = pi sigma^2 e^{-x^2/(2 sigma^2)} e^{-2 pi^2 sigma^2 t^2}
    auto r = integrate([&](double t) { return std::norm(gabor_phi(x, t, kStd)); }, -10, 10,
                       QuadOptions{1e-14, 1.0});
    best = std::max(best, r.value);
  }
  EXPECT_NEAR(mixed_norm(f, g, 0.5, INFINITY), 3 * best, 1e-10);
}

TEST(Plan, ExplicitConstantsAndMonotonicity) {
  GaussianModel m(0.25, 1.0);
  auto pc = plan_constants(m, 0.5);
  EXPECT_DOUBLE_EQ(pc.a, 0.125);
  EXPECT_DOUBLE_EQ(pc.b, kPi * kPi / 8);
  EXPECT_EQ(pc.source, "closed-form");
  GaussianModel m2(1.0 / std::sqrt(2 * kPi), 1.0);
  double eps = 1e-2;
  auto prev = select_grid_params(m2, 0.75, 4, 0.5, eps, 12, 1.0);
  EXPECT_TRUE(prev.satisfied());
  for (int i = 0; i < 8; ++i) {
    eps /= 2;
    auto p = select_grid_params(m2, 0.75, 4, 0.5, eps, 12, 1.0);
    EXPECT_TRUE(p.satisfied());
    EXPECT_GE(1 / p.h, 1 / prev.h);
    EXPECT_GE(p.H, prev.H);
    EXPECT_GE(p.N, prev.N);
    EXPECT_NEAR(p.noise_budget, eps / (4 * p.h * 11 * p.D), 1e-15 * p.noise_budget + 1e-300);
    prev = p;
  }
}

TEST(Plan, DerivedConstantsDominateClosedFormAtBoundary) {
  GaussianModel m(0.4, 0.8);
  auto lem = derived_constants(m, 2 * m.sigma, decay_constants(m));
  auto prop = plan_constants(m, 2 * m.sigma);
  EXPECT_LE(lem.D, prop.D);
  auto wide = plan_constants(m, 3 * m.sigma);
  EXPECT_EQ(wide.source, "derived");
  EXPECT_GT(wide.D, lem.D);
}

TEST(Plan, NonExplicitNeedsOverrides) {
  GaussianModel m(1.0, 1.0);
  EXPECT_THROW(select_grid_params(m, 1, 4, 0.5, 1e-3, 5, 1), ConfigError);
  PlanConstants pc{0.1, 2.0, 1e4, "user"};
  auto p = select_grid_params(m, 1, 4, 0.5, 1e-3, 5, 1, pc);
  EXPECT_TRUE(p.satisfied());
  EXPECT_EQ(p.constants_source, "user");
}

TEST(Plan, DetectedPartitionFormulas) {
  GaussianModel m(1.0 / std::sqrt(2 * kPi), 1.0);
  auto p = select_grid_params_detected(m, 0.75, 40, 1e-3, 2.0);
  double X = 16 * p.D * 4.0 * 40 / (1e-3 * 0.75);
  EXPECT_NEAR(p.log_arg, X, 1e-9 * X);
  EXPECT_GE(1 / p.h, m.sigma * std::log(X + 1) * (1 - 1e-9));
  EXPECT_GE(p.H * p.h, std::sqrt(std::log(X) / p.b) * (1 - 1e-9));
  EXPECT_GE(p.N, std::ceil(2 * (40 + 0.375)) + std::log(X) / p.a);
  EXPECT_GE(2 * p.N + 1, 161);
  EXPECT_NEAR(p.noise_budget, 1e-3 * 0.75 / (16 * p.h * p.D * 40), 1e-20);
}

TEST(Growth, MonotoneInSAndEps) {
  GaussianModel m(1.0 / std::sqrt(2 * kPi), 1.0);
  long prev = 0;
  for (double s : {4, 8, 16, 32, 64}) {
    long n = sample_count(s, 1e-3, 1.0, m, 0.75);
    EXPECT_GT(n, prev);
    prev = n;
  }
  // eps -> 0 at fixed s: N ~ log(1/eps)^{5/2} up to constants.
  std::vector<double> ratios;
  for (double e : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    double l = std::log(1 / e);
    ratios.push_back(sample_count(8, e, 1.0, m, 0.75) / std::pow(l, 2.5));
  }
  double lo = *std::min_element(ratios.begin(), ratios.end());
  double hi = *std::max_element(ratios.begin(), ratios.end());
  EXPECT_LT(hi / lo, 10.0);
}
