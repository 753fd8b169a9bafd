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

#ifndef PROPHET_DISTRIBUTIONS_H_
#define PROPHET_DISTRIBUTIONS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "prophet/random.h"

namespace prophet {

// One component of a value distribution: uniform on [lo, hi] with the given
// mixture weight. lo == hi is a point mass.
struct Segment {
  double weight;
  double lo;
  double hi;

  bool is_atom() const { return lo == hi; }
};

// Finite mixture of uniform intervals over the nonnegative reals. Covers
// point masses, two-point distributions, U(a, b), and shifted/spiked
// uniforms such as k^3 * Ber(1/k^2) + U(0, 1).
class ValueDist {
 public:
  // Throws std::invalid_argument on negative or non-finite bounds, weights
  // outside [0, 1], or total weight off 1 by more than 1e-12. Segments are
  // sorted by lo.
  explicit ValueDist(std::vector<Segment> segments);

  static ValueDist atom(double x);
  static ValueDist uniform(double lo, double hi);
  // {value: probability} pairs.
  static ValueDist discrete(std::span<const double> values,
                            std::span<const double> probs);

  const std::vector<Segment>& segments() const { return segments_; }

  double mean() const;
  double support_min() const;
  double support_max() const;
  bool is_discrete() const;

  // Pr[v = x].
  double atom_mass(double x) const;
  // Pr[v < x].
  double cdf_below(double x) const;

 private:
  std::vector<Segment> segments_;
};

// Ordered boxes; position is arrival order.
class Instance {
 public:
  explicit Instance(std::vector<ValueDist> boxes);

  size_t size() const { return boxes_.size(); }
  const ValueDist& box(size_t i) const { return boxes_[i]; }
  const std::vector<ValueDist>& boxes() const { return boxes_; }

  // Sorted, de-duplicated segment endpoints of every box.
  std::vector<double> breakpoints() const;
  bool is_discrete() const;

 private:
  std::vector<ValueDist> boxes_;
};

// Pooled samples with box identities removed, sorted descending.
class SampleSet {
 public:
  SampleSet(std::vector<double> values, int64_t k);

  const std::vector<double>& values() const { return values_; }
  int64_t k() const { return k_; }
  size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  int64_t k_;
};

// Right-continuous CDF, Pr[v <= x].
double cdf(const ValueDist& d, double x);

// E[v * 1{v > t}], strict.
double tail_expectation(const ValueDist& d, double t);

double sample(const ValueDist& d, CounterRng& rng);

// prod_i F_i(x): the CDF of max_i v_i.
double product_cdf(const Instance& inst, double x);

// E[max_i v_i], exact up to rounding: Gauss-Legendre with ceil((n+1)/2)
// nodes on each breakpoint interval, where 1 - F is a polynomial of
// degree <= n.
double prophet_expectation(const Instance& inst);

SampleSet draw_sample_set(const Instance& inst, int64_t k, CounterRng& rng);

// Number of samples exactly equal to x.
int64_t occurrences(const SampleSet& s, double x);

// The rank-th highest element of a pooled sample multiset, with the block
// of equal values it sits in. Among `tie_count` equal samples the selected
// one is the `tie_position`-th highest by latent rank (1-based), so its
// latent uniform is distributed as Beta(tie_count + 1 - tie_position,
// tie_position).
struct OrderStatistic {
  double value = 0.0;
  int64_t tie_position = 1;
  int64_t tie_count = 1;
};

// Draws the rank-th highest of k samples per box without materializing
// the sample set. Equal in distribution to selecting from
// draw_sample_set(inst, k, rng): per-segment counts are multinomial, and
// within an elementary interval between breakpoints the pooled points are
// i.i.d. uniform, so the needed order statistic is a scaled Beta draw.
// O(segments * breakpoints) per call regardless of k.
OrderStatistic draw_order_statistic(const Instance& inst, int64_t k,
                                    int64_t rank, CounterRng& rng);

}  // namespace prophet

#endif  // PROPHET_DISTRIBUTIONS_H_
