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

#include "prophet/algorithms.h"

#include <chrono>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "prophet/evaluation.h"
#include "prophet/random.h"

namespace prophet {
namespace {

Instance instance_a() {
  const double v[] = {0.0, 2.0};
  const double p[] = {0.5, 0.5};
  return Instance({ValueDist::atom(1.0), ValueDist::discrete(v, p)});
}

SampleSet set_of(std::vector<double> v, int64_t k) {
  return SampleSet(std::move(v), k);
}

TEST(OmegaRho, FixedPoint) {
  const auto start = std::chrono::steady_clock::now();
  const double rho = omega_rho();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  EXPECT_LE(std::abs(rho * std::exp(rho) - 1.0), 1e-12);
  EXPECT_GT(rho, 0.567143);
  EXPECT_LT(rho, 0.567144);
  EXPECT_NEAR(1.0 - rho, 0.432856709, 1e-9);
  EXPECT_LT(ms, 1.0);
}

TEST(RecommendedRank, Examples) {
  EXPECT_EQ(recommended_rank(10'000), 5208);
  EXPECT_EQ(recommended_rank(1), 1);
  EXPECT_EQ(recommended_rank(1000), 468);
}

TEST(SelectThreshold, Examples) {
  EXPECT_EQ(select_threshold(set_of({5, 3, 1}, 1), OrdinalRank{2}), 3.0);
  EXPECT_EQ(select_threshold(set_of({5, 3, 1}, 1), MaxSample{}), 5.0);
  EXPECT_EQ(select_threshold(set_of({7, 7, 7}, 3), OrdinalRank{3}), 7.0);
  EXPECT_THROW(select_threshold(set_of({5, 3, 1}, 1), OrdinalRank{4}),
               std::out_of_range);
}

TEST(SelectThreshold, MaxSampleIsRankOne) {
  CounterRng rng(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_discrete_instance(rng, 4, 3);
    const SampleSet s = draw_sample_set(inst, 2, rng);
    const OrderStatistic a = select_order_statistic(s, MaxSample{});
    const OrderStatistic b = select_order_statistic(s, OrdinalRank{1});
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.tie_position, b.tie_position);
    EXPECT_EQ(a.tie_count, b.tie_count);
  }
}

TEST(SelectOrderStatistic, TieBlock) {
  const OrderStatistic os =
      select_order_statistic(set_of({9, 4, 4, 4, 1}, 1), OrdinalRank{3});
  EXPECT_EQ(os.value, 4.0);
  EXPECT_EQ(os.tie_count, 3);
  EXPECT_EQ(os.tie_position, 2);
}

TEST(RunStaticThreshold, Examples) {
  const double a[] = {1, 2};
  EXPECT_EQ(run_static_threshold(a, 1.5), 2.0);
  EXPECT_EQ(run_static_threshold(a, 3.0), 0.0);
  const double b[] = {0.4, 0.9, 0.7};
  EXPECT_EQ(run_static_threshold(b, 0.5), 0.9);
  const double c[] = {2, 3};
  EXPECT_EQ(run_static_threshold(c, 2.0), 3.0);
  const double ranks[] = {0.8, 0.1};
  EXPECT_EQ(run_static_threshold(c, ranks, 2.0, 0.5), 2.0);
  EXPECT_EQ(run_static_threshold(c, ranks, 2.0, 0.9), 3.0);
}

TEST(RunStaticThreshold, ReturnsZeroOrAValue) {
  CounterRng rng(32, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(1 + trial % 6);
    for (double& x : v) x = std::floor(5 * rng.uniform());
    const double out = run_static_threshold(v, 2.0);
    EXPECT_TRUE(out == 0.0 || std::find(v.begin(), v.end(), out) != v.end());
  }
}

TEST(ExactStaticThreshold, Examples) {
  EXPECT_DOUBLE_EQ(exact_static_threshold_value(instance_a(), 1.5), 1.0);
  EXPECT_DOUBLE_EQ(exact_static_threshold_value(instance_a(), 0.5), 1.0);
  EXPECT_DOUBLE_EQ(
      exact_static_threshold_value(Instance({ValueDist::uniform(0, 1)}), 0.5),
      0.375);
  EXPECT_DOUBLE_EQ(exact_static_threshold_value(Instance({ValueDist::atom(1)}),
                                                0.2),
                   1.0);
}

// Explicit thresholds with ties: a value equal to T wins with the single
// sample tie rule. Compared against the interleaving oracle.
TEST(ExactStaticThreshold, MatchesOracleWithTies) {
  CounterRng rng(33, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_discrete_instance(rng, 4, 4);
    const double t = std::floor(9 * rng.uniform());
    EXPECT_NEAR(exact_static_threshold_value(inst, t),
                testing::brute_rule_value(inst, 1, ExplicitThreshold{t}),
                1e-10)
        << "trial " << trial;
  }
}

TEST(ExactStaticThreshold, ContinuousOffAtoms) {
  const Instance inst({ValueDist({{0.5, 0.0, 2.0}, {0.5, 3.0, 3.0}}),
                       ValueDist::uniform(1.0, 4.0)});
  for (double t : {0.5, 1.5, 2.5, 3.5}) {
    EXPECT_NEAR(exact_static_threshold_value(inst, t),
                exact_static_threshold_value(inst, t + 1e-9), 1e-7);
  }
}

TEST(ThresholdSurvival, ClosedFormWithoutTies) {
  const Instance inst({ValueDist::uniform(0, 2), ValueDist::uniform(1, 3)});
  const OrderStatistic t{1.5, 1, 1};
  const double f1 = 0.75, f2 = 0.25;
  EXPECT_DOUBLE_EQ(threshold_survival(inst, t, 0.0), 1.0);
  EXPECT_NEAR(threshold_survival(inst, t, 1.0), 1.0 - f1 * f2, 1e-15);
  EXPECT_NEAR(threshold_survival(inst, t, 1.8), 0.1 + f1 * 0.6, 1e-15);
}

TEST(ThresholdDiagnostics, Examples) {
  const ThresholdDiagnostics d = threshold_diagnostics(instance_a(), 1.5);
  EXPECT_DOUBLE_EQ(d.f_of_t, 0.5);
  EXPECT_DOUBLE_EQ(d.g, 0.5);
  EXPECT_DOUBLE_EQ(d.h, 0.5);
  EXPECT_LE(d.f_of_t, std::exp(-d.g));

  const ThresholdDiagnostics high = threshold_diagnostics(instance_a(), 5.0);
  EXPECT_EQ(high.f_of_t, 1.0);
  EXPECT_EQ(high.g, 0.0);
  EXPECT_EQ(high.h, 0.0);

  const ThresholdDiagnostics low = threshold_diagnostics(instance_a(), -1.0);
  EXPECT_EQ(low.f_of_t, 0.0);
  EXPECT_GE(low.g, 1.0);
}

TEST(ThresholdDiagnostics, SandwichOnRandomInstances) {
  CounterRng rng(34, 0);
  for (int trial = 0; trial < 10'000; ++trial) {
    const Instance inst = trial % 2 ? random_discrete_instance(rng, 5, 4)
                                    : random_mixture_instance(rng, 5);
    const double t = 13.0 * rng.uniform() - 0.5;
    const ThresholdDiagnostics d = threshold_diagnostics(inst, t);
    ASSERT_LE(1.0 - d.g, d.f_of_t + 1e-12);
    ASSERT_LE(d.f_of_t, std::exp(-d.g) + 1e-12);
    ASSERT_DOUBLE_EQ(d.h, std::min(d.f_of_t, 1.0 - d.f_of_t));
  }
}

// Pr[ALG_T >= x] >= h(T) Pr[max >= x] at every support point, for
// thresholds strictly between atoms.
TEST(ThresholdDiagnostics, HDominance) {
  CounterRng rng(35, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = random_discrete_instance(rng, 5, 4);
    const double t = std::floor(9 * rng.uniform()) + 0.5;
    const double h = threshold_diagnostics(inst, t).h;
    for (double x : inst.breakpoints()) {
      if (x <= 0.0) continue;
      const double alg = threshold_survival(inst, {t, 1, 1}, x);
      const double max = 1.0 - product_cdf(inst, std::nextafter(x, 0.0));
      EXPECT_GE(alg, h * max - 1e-12) << "trial " << trial << " x " << x;
    }
  }
}

}  // namespace
}  // namespace prophet
