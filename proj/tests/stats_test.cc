// Copyright 2026 The Prophet Samples Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prophet/stats.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "prophet/random.h"

namespace prophet {
namespace {

// Calibrated once from adaptive quadrature of |phi_1 - phi_2| / 2 over
// variance ratios in [0.5, 2]; the supremum of TV / |ratio - 1| there is
// 0.33213, attained at ratio 0.5.
constexpr double kSameMeanNormalC = 0.34;

CountDist random_count_dist(CounterRng& rng, int64_t size) {
  std::vector<double> w(static_cast<size_t>(size));
  double total = 0.0;
  for (double& x : w) {
    x = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return CountDist(0, std::move(w));
}

double expect_q(const CountDist& d, const std::vector<double>& q) {
  return d.expect([&](int64_t i) { return q[static_cast<size_t>(i)]; });
}

TEST(CountDist, Validates) {
  EXPECT_THROW(CountDist(0, {0.5, 0.4}), std::invalid_argument);
  EXPECT_THROW(CountDist(0, {1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(CountDist(0, {}), std::invalid_argument);
}

TEST(CountDist, Moments) {
  const CountDist d(2, {0.25, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(d.mean(), 3.0);
  EXPECT_DOUBLE_EQ(d.variance(), 0.5);
  EXPECT_EQ(d.pmf(1), 0.0);
  EXPECT_EQ(d.pmf(3), 0.5);
}

TEST(Binom, Examples) {
  const CountDist b = binom(2, 0.5);
  EXPECT_NEAR(b.pmf(0), 0.25, 1e-15);
  EXPECT_NEAR(b.pmf(1), 0.5, 1e-15);
  EXPECT_NEAR(b.pmf(2), 0.25, 1e-15);
  const CountDist zero = binom(9, 0.0);
  EXPECT_EQ(zero.pmf(0), 1.0);
  EXPECT_NEAR(binom(10, 0.3).pmf(3), 0.26682793200000005, 1e-12);
}

TEST(Binom, LargeNStaysNormalized) {
  const CountDist b = binom(1'000'000, 0.37);
  EXPECT_NEAR(b.mean(), 370'000.0, 1e-6);
  EXPECT_NEAR(b.variance(), 1'000'000 * 0.37 * 0.63, 1e-3);
}

TEST(Convolve, Examples) {
  const CountDist two = convolve(binom(1, 0.5), binom(1, 0.5));
  for (int i = 0; i <= 2; ++i) EXPECT_NEAR(two.pmf(i), binom(2, 0.5).pmf(i), 1e-15);

  const CountDist shifted = convolve(binom(3, 0.2), CountDist::point_mass(5));
  EXPECT_EQ(shifted.min_value(), 5);
  EXPECT_NEAR(shifted.pmf(6), binom(3, 0.2).pmf(1), 1e-15);

  const CountDist b = binom(1, 1.0 / 3.0);
  const CountDist three = convolve(convolve(b, b), b);
  EXPECT_NEAR(three.pmf(0), 8.0 / 27.0, 1e-15);
  EXPECT_NEAR(three.pmf(1), 12.0 / 27.0, 1e-15);
  EXPECT_NEAR(three.pmf(2), 6.0 / 27.0, 1e-15);
  EXPECT_NEAR(three.pmf(3), 1.0 / 27.0, 1e-15);
}

TEST(SumOfBinomials, Examples) {
  const std::pair<int64_t, double> a[] = {{1, 0.5}, {1, 0.5}};
  const CountDist s = sum_of_binomials(a);
  for (int i = 0; i <= 2; ++i) EXPECT_NEAR(s.pmf(i), binom(2, 0.5).pmf(i), 1e-15);

  const std::pair<int64_t, double> one[] = {{30, 1.0 / 3.0}};
  const CountDist b = sum_of_binomials(one);
  for (int i = 0; i <= 30; ++i) {
    EXPECT_NEAR(b.pmf(i), binom(30, 1.0 / 3.0).pmf(i), 1e-15);
  }

  const std::pair<int64_t, double> c[] = {{2, 0.5}, {2, 0.5}};
  const CountDist four = sum_of_binomials(c);
  for (int i = 0; i <= 4; ++i) EXPECT_NEAR(four.pmf(i), binom(4, 0.5).pmf(i), 1e-15);
}

TEST(SumOfBinomials, MatchesRepeatedConvolution) {
  const std::pair<int64_t, double> specs[] = {{5, 0.2}, {3, 0.7}, {4, 0.0}};
  const CountDist s = sum_of_binomials(specs);
  const CountDist ref = convolve(convolve(binom(5, 0.2), binom(3, 0.7)),
                                 binom(4, 0.0));
  for (int64_t i = 0; i <= 12; ++i) EXPECT_NEAR(s.pmf(i), ref.pmf(i), 1e-14);
}

TEST(Mixture, WeightsComponents) {
  const double coeff[] = {0.25, 0.75};
  const CountDist comps[] = {CountDist::point_mass(0), CountDist::point_mass(2)};
  const CountDist m = mixture(coeff, comps);
  EXPECT_EQ(m.pmf(0), 0.25);
  EXPECT_EQ(m.pmf(1), 0.0);
  EXPECT_EQ(m.pmf(2), 0.75);
}

TEST(DiscretizedNormal, Examples) {
  const CountDist d = discretized_normal({0.0, 1.0}, -10, 10);
  EXPECT_NEAR(d.pmf(0), 0.38292492254802624, 1e-12);
  EXPECT_NEAR(d.pmf(1), d.pmf(-1), 1e-15);
  double total = 0.0;
  for (double m : d.masses()) total += m;
  EXPECT_NEAR(total, 1.0, 1e-14);
  // Tails fold into the boundary bins.
  const CountDist narrow = discretized_normal({0.0, 1.0}, -1, 1);
  EXPECT_NEAR(narrow.pmf(1), 1.0 - normal_cdf(0.5), 1e-15);
}

TEST(TvDistance, Examples) {
  const CountDist a = binom(7, 0.3);
  EXPECT_EQ(tv_distance(a, a), 0.0);
  EXPECT_EQ(tv_distance(CountDist::point_mass(1), CountDist::point_mass(4)),
            1.0);
  EXPECT_NEAR(tv_distance(binom(1, 0.5), binom(1, 0.75)), 0.25, 1e-15);
}

TEST(TvDistance, MetricProperties) {
  CounterRng rng(21, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const CountDist a = random_count_dist(rng, 6);
    const CountDist b = random_count_dist(rng, 6);
    const CountDist c = random_count_dist(rng, 6);
    EXPECT_NEAR(tv_distance(a, b), tv_distance(b, a), 1e-15);
    EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-15);
    EXPECT_GE(tv_distance(a, b), 0.0);
    EXPECT_LE(tv_distance(a, b), 1.0 + 1e-15);
  }
}

// |E_D1[q] - E_D2[q]| <= TV(D1, D2) for q with values in [0, 1], including
// when D2 is a mixture.
TEST(TvDistance, BoundsBoundedExpectations) {
  CounterRng rng(22, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int64_t m = 1 + static_cast<int64_t>(rng.uniform() * 12);
    std::vector<double> q(static_cast<size_t>(m));
    for (double& x : q) x = rng.uniform();
    const CountDist d1 = random_count_dist(rng, m);
    const CountDist d2 = random_count_dist(rng, m);
    const double tv = tv_distance(d1, d2);
    EXPECT_LE(expect_q(d1, q), expect_q(d2, q) + tv + 1e-14);
    EXPECT_LE(expect_q(d2, q), expect_q(d1, q) + tv + 1e-14);

    const double c[] = {0.3, 0.7};
    const CountDist parts[] = {random_count_dist(rng, m),
                               random_count_dist(rng, m)};
    const CountDist mix = mixture(c, parts);
    EXPECT_LE(std::abs(expect_q(d1, q) - expect_q(mix, q)),
              tv_distance(d1, mix) + 1e-14);
  }
}

TEST(TvBinomVsNormal, Examples) {
  EXPECT_NEAR(tv_binom_vs_normal(1, 0.5), 0.0910005277927168, 1e-10);
  EXPECT_LT(tv_binom_vs_normal(10'000, 0.3), tv_binom_vs_normal(100, 0.3));
  EXPECT_LT(tv_binom_vs_normal(10'000, 0.3), 0.05);
}

TEST(TvBinomVsNormal, DecreasesInN) {
  for (double p : {0.1, 0.3, 0.5}) {
    double prev = 2.0;
    for (int64_t n : {100, 1000, 10'000}) {
      const double tv = tv_binom_vs_normal(n, p);
      EXPECT_LT(tv, prev) << "n=" << n << " p=" << p;
      prev = tv;
    }
  }
}

// Simpson's rule on |phi_1 - phi_2| / 2 over [-L, L].
double tv_normals_numeric(double v1, double v2) {
  const double L = 15.0 * std::sqrt(std::max(v1, v2));
  const int n = 200'000;
  const double h = 2.0 * L / n;
  auto f = [&](double x) {
    const double a = std::exp(-x * x / (2 * v1)) / std::sqrt(2 * M_PI * v1);
    const double b = std::exp(-x * x / (2 * v2)) / std::sqrt(2 * M_PI * v2);
    return 0.5 * std::abs(a - b);
  };
  double s = f(-L) + f(L);
  for (int i = 1; i < n; ++i) s += f(-L + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

TEST(TvSameMeanNormals, Examples) {
  EXPECT_EQ(tv_same_mean_normals({0.0, 2.0}, {0.0, 2.0}), 0.0);
  EXPECT_DOUBLE_EQ(tv_same_mean_normals({1.0, 1.0}, {1.0, 3.0}),
                   tv_same_mean_normals({1.0, 3.0}, {1.0, 1.0}));
  const double tv = tv_same_mean_normals({0.0, 1.0}, {0.0, 1.1});
  EXPECT_GT(tv, 0.0);
  EXPECT_NEAR(tv, 0.023057910048586424, 1e-9);
  EXPECT_LE(tv, kSameMeanNormalC * std::abs(1.0 / 1.1 - 1.0));
  EXPECT_THROW(tv_same_mean_normals({0.0, 1.0}, {1.0, 1.0}),
               std::invalid_argument);
}

TEST(TvSameMeanNormals, MatchesQuadratureAndConstantBound) {
  for (double r = 0.5; r <= 2.0 + 1e-12; r += 0.05) {
    const double tv = tv_same_mean_normals({0.0, r}, {0.0, 1.0});
    EXPECT_NEAR(tv, tv_normals_numeric(r, 1.0), 1e-9) << r;
    EXPECT_LE(tv, kSameMeanNormalC * std::abs(r - 1.0) + 1e-15) << r;
  }
}

TEST(Chernoff, Examples) {
  CounterRng rng(23, 0);
  const std::vector<double> zeros(50, 0.0);
  const ChernoffReport z = chernoff_check(zeros, 0.3, 10'000, rng);
  EXPECT_EQ(z.empirical, 0.0);
  EXPECT_TRUE(z.pass);

  const std::vector<double> half(1000, 0.5);
  const ChernoffReport r = chernoff_check(half, 0.2, 100'000, rng);
  EXPECT_NEAR(r.bound, 2.0 * std::exp(-500.0 * 0.04 / 3.0), 1e-15);
  EXPECT_LE(r.empirical, r.bound);
  EXPECT_TRUE(r.pass);

  const ChernoffReport far = chernoff_check(half, 0.99, 10'000, rng);
  EXPECT_EQ(far.empirical, 0.0);
  EXPECT_LT(far.bound, 1e-70);
}

TEST(Chernoff, RejectsFewReps) {
  CounterRng rng(24, 0);
  const std::vector<double> half(10, 0.5);
  EXPECT_THROW(chernoff_check(half, 0.2, 10, rng), std::invalid_argument);
}

}  // namespace
}  // namespace prophet
