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

#ifndef PROPHET_ALGORITHMS_H_
#define PROPHET_ALGORITHMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "prophet/distributions.h"

namespace prophet {

// Static threshold rules. Thresholds taken from the sample set depend only
// on the rank, never on the sample values.
struct ExplicitThreshold {
  double t;
};
struct OrdinalRank {
  int64_t rank;  // 1 = highest sample
};
struct MaxSample {};

using ThresholdRule = std::variant<ExplicitThreshold, OrdinalRank, MaxSample>;

// "explicit", "ordinal", or "max_sample".
std::string rule_name(const ThresholdRule& rule);

// The sample rank a rule reads, or 0 for an explicit threshold.
int64_t rule_rank(const ThresholdRule& rule);

// Root of x e^x = 1 (the omega constant), by bisection on [0.5, 0.6].
double omega_rho();

// max(1, ceil(rho k - k^(2/3))).
int64_t recommended_rank(int64_t k);

// The rule's threshold as a value. Throws std::out_of_range when an ordinal
// rank exceeds |S|.
double select_threshold(const SampleSet& s, const ThresholdRule& rule);

// Same, keeping the block of equal samples the threshold was taken from.
// An explicit threshold behaves like a single sample with its own latent
// rank.
OrderStatistic select_order_statistic(const SampleSet& s,
                                      const ThresholdRule& rule);

// First value strictly above t, or 0 if none. An equal value never wins;
// use the ranked overload to apply latent-rank tie-breaking.
double run_static_threshold(std::span<const double> values, double t);

// Tie-aware variant: value i beats the threshold iff
// (values[i], value_ranks[i]) > (t, t_rank) lexicographically.
double run_static_threshold(std::span<const double> values,
                            std::span<const double> value_ranks, double t,
                            double t_rank);

// E[ALG_T] for the fixed threshold T with a single latent rank (a value
// equal to T wins with probability 1/2):
//   sum_i (prod_{j<i} F_j(T)) * E[v_i 1{v_i > T}]  plus tie terms.
double exact_static_threshold_value(const Instance& inst, double t);

// E[ALG] when the threshold is the tie_position-th of tie_count equal
// samples. The threshold's latent rank r is Beta(m + 1 - j, j); a value equal
// to T wins with probability 1 - r given r, independently across boxes.
// The payoff is a polynomial in r, integrated against the Beta moments.
double exact_static_threshold_value(const Instance& inst,
                                    const OrderStatistic& threshold);

// Pr[ALG >= x] for the same threshold model.
double threshold_survival(const Instance& inst,
                          const OrderStatistic& threshold, double x);

// Exact F(T), g(T) = sum_i Pr[v_i > T], and h(T) = min(F, 1 - F).
struct ThresholdDiagnostics {
  double t;
  double f_of_t;
  double g;
  double h;
};

// Throws std::logic_error if 1 - g <= F <= exp(-g) fails by more than
// 1e-12; that cannot happen without an arithmetic bug.
ThresholdDiagnostics threshold_diagnostics(const Instance& inst, double t);

}  // namespace prophet

#endif  // PROPHET_ALGORITHMS_H_
