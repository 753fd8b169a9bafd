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

#ifndef PROPHET_EVALUATION_H_
#define PROPHET_EVALUATION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "prophet/algorithms.h"
#include "prophet/distributions.h"
#include "prophet/random.h"

namespace prophet {

// Algorithm value against the prophet. ci_halfwidth is the 95% normal
// half-width of the algorithm value (0 for exact evaluations).
struct RatioReport {
  double alg_value = 0.0;
  double prophet_value = 0.0;
  double ratio = 0.0;
  double ci_halfwidth = 0.0;
  int64_t reps = 0;
  uint64_t seed = 0;
};

// Plain Monte Carlo. Replication r draws the k samples per box and a latent
// uniform rank for each from stream (seed, r, kSamples), takes the rule's
// threshold as the rank-th largest (value, rank) pair, then draws the
// online values with their own latent ranks from (seed, r, kValues). The
// prophet value is exact. Output is identical for every `threads`.
RatioReport mc_ratio(const Instance& inst, const ThresholdRule& rule,
                     int64_t k, int64_t reps, uint64_t seed, int threads = 0);

// Monte Carlo over the threshold only: each replication draws the
// rank-th order statistic of the pooled samples and adds the exact value
// of the resulting static threshold. The CI reflects threshold randomness
// alone.
RatioReport semi_exact_ordinal(const Instance& inst, int64_t k, int64_t rank,
                               int64_t reps, uint64_t seed, int threads = 0);

// Law of the selected threshold (with its tie block) for an all-atoms
// instance, by enumerating every sample vector. Throws std::invalid_argument
// for non-discrete instances or more than 4 * 10^6 sample vectors.
std::vector<std::pair<OrderStatistic, double>> exact_threshold_distribution(
    const Instance& inst, int64_t k, const ThresholdRule& rule);

// E[ALG] for an all-atoms instance, exact.
double exact_ordinal_value(const Instance& inst, int64_t k,
                           const ThresholdRule& rule);

// The one-sample max-threshold rule, exact. Requires n <= 6 boxes with at
// most 6 support points each.
double exact_single_sample_value(const Instance& inst);

enum class DominanceMode { kExact, kMonteCarlo };

struct DominanceOptions {
  DominanceMode mode = DominanceMode::kExact;
  int64_t reps = 0;  // Monte Carlo only
  uint64_t seed = 0;
  int threads = 0;
};

// Pr[ALG >= x] against gamma * Pr[max >= x] on a grid of positive x.
struct DominanceReport {
  double gamma = 0.0;
  std::vector<double> grid;
  std::vector<double> alg_survival;
  std::vector<double> max_survival;
  double worst_x = 0.0;
  double worst_ratio = 1.0;
  bool pass = true;
};

// Grid: every positive breakpoint plus midpoints between consecutive
// breakpoints. Points with Pr[max >= x] = 0 are dropped. Exact mode needs an
// all-atoms instance unless the rule is an explicit threshold.
DominanceReport dominance_check(const Instance& inst,
                                const ThresholdRule& rule, int64_t k,
                                double gamma,
                                const DominanceOptions& options = {});

// Two boxes: U(1, 2), then U(0, 1) with probability 1 - 1/k^2 and
// U(k^3, k^3 + 1) with probability 1/k^2. Requires k >= 2.
Instance case1_instance(int64_t k);

// n identical boxes U(k, k + 1). Requires n >= 2.
Instance case2_instance(int64_t k, int64_t n);

// max(2, floor(k^(1/4))).
int64_t case2_default_boxes(int64_t k);

struct SweepRow {
  int64_t rank = 0;
  RatioReport case1;
  RatioReport case2;
  int64_t case2_boxes = 0;
  double min_ratio = 0.0;
};

// For each rank, semi_exact_ordinal on case1_instance(k) and
// case2_instance(k, case2_default_boxes(k)), keeping the smaller ratio.
std::vector<SweepRow> ordinal_upper_bound_sweep(int64_t k,
                                                std::span<const int64_t> ranks,
                                                int64_t reps, uint64_t seed,
                                                int threads = 0);

// Random test instances. Discrete: 1..max_boxes boxes with 1..max_support
// integer atoms in [0, 8], so ties across boxes are common. Mixture:
// 2..max_boxes boxes of 1..3 segments, some of them atoms.
Instance random_discrete_instance(CounterRng& rng, int max_boxes,
                                  int max_support);
Instance random_mixture_instance(CounterRng& rng, int max_boxes);

}  // namespace prophet

#endif  // PROPHET_EVALUATION_H_
