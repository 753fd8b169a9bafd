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

#ifndef PROPHET_STATS_H_
#define PROPHET_STATS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "prophet/random.h"

namespace prophet {

// A distribution on the consecutive integers offset, offset + 1, ...
class CountDist {
 public:
  // Throws std::invalid_argument if a mass is negative or the total is off
  // 1 by more than 1e-10.
  CountDist(int64_t offset, std::vector<double> masses);

  static CountDist point_mass(int64_t value);

  int64_t offset() const { return offset_; }
  int64_t min_value() const { return offset_; }
  int64_t max_value() const {
    return offset_ + static_cast<int64_t>(masses_.size()) - 1;
  }
  const std::vector<double>& masses() const { return masses_; }

  // Pr[X = i]; zero outside the stored range.
  double pmf(int64_t i) const;
  double mean() const;
  double variance() const;

  // E[f(X)].
  double expect(const std::function<double(int64_t)>& f) const;

 private:
  int64_t offset_;
  std::vector<double> masses_;
};

struct NormalSpec {
  double mu;
  double sigma2;
};

// Standard normal CDF, accurate in both tails.
double normal_cdf(double z);

CountDist binom(int64_t n, double p);

// Distribution of the sum of independent draws.
CountDist convolve(const CountDist& a, const CountDist& b);

// Independent sum of Bin(n_i, p_i).
CountDist sum_of_binomials(std::span<const std::pair<int64_t, double>> specs);

// Draw j with probability coefficients[j], then draw from components[j].
CountDist mixture(std::span<const double> coefficients,
                  std::span<const CountDist> components);

// Bin i receives Pr[i - 0.5 <= Y <= i + 0.5] for Y ~ N(mu, sigma2) on
// [lo, hi]; the mass outside the grid is folded into bins lo and hi.
CountDist discretized_normal(const NormalSpec& spec, int64_t lo, int64_t hi);

// sup_A |a(A) - b(A)| = (1/2) sum_i |a_i - b_i|.
double tv_distance(const CountDist& a, const CountDist& b);

// sum_i |Pr[X = i] - Pr[i - 0.5 <= Y <= i + 0.5]| over all integers i, with
// X ~ Bin(n, p) and Y ~ N(np, np(1-p)). Note: no factor 1/2. Integers
// outside [0, n] are summed in closed form from the normal tails.
double tv_binom_vs_normal(int64_t n, double p);

// Total variation between N(mu, s1) and N(mu, s2). The densities cross at
// +-c; the integral of |phi_1 - phi_2| / 2 on each piece is a difference
// of erf values. Throws std::invalid_argument on a mean mismatch.
double tv_same_mean_normals(const NormalSpec& s1, const NormalSpec& s2);

struct ChernoffReport {
  double mu = 0.0;
  double delta = 0.0;
  int64_t reps = 0;
  double empirical = 0.0;  // frequency of |X - mu| >= delta * mu
  double bound = 0.0;      // 2 exp(-delta^2 mu / 3)
  double std_error = 0.0;
  bool pass = false;       // empirical <= bound + 3 * std_error
};

// Monte Carlo check of the two-sided multiplicative Chernoff bound for a
// sum of independent Bernoulli(probs[i]). Requires reps >= 10^4.
ChernoffReport chernoff_check(std::span<const double> probs, double delta,
                              int64_t reps, CounterRng& rng);

}  // namespace prophet

#endif  // PROPHET_STATS_H_
