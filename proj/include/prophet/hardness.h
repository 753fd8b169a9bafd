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

// Six-box hard family for sample-based single-choice stopping.
//
// Box i holds u_i with probability p_i and 0 otherwise, where
// u = (xi, 1, 1, 1, 1, k^4). The algorithm sees k samples per box, pooled.
// Box 1 is deterministic, so the sample set is summarized by the number of
// ones (0..4k) and whether k^4 was seen (the spike event). Given the spike
// event the only sensible play is to wait for box 6; otherwise every
// algorithm is a table q(prefix, ones) of acceptance probabilities, where
// the prefix is the observed (xi, v_2, ..., v_m) with m <= 5.

#ifndef PROPHET_HARDNESS_H_
#define PROPHET_HARDNESS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prophet/random.h"
#include "prophet/stats.h"

namespace prophet::hardness {

inline constexpr int kBoxes = 6;
inline constexpr int kPrefixCount = 31;
inline constexpr int64_t kMaxK = 10'000;  // keeps k^4 exact in binary64

struct HardParams {
  double xi = 0.9;
  double delta1 = 0.01;
  double delta2 = 0.5005;
  double eps = 0.0001;
  int64_t k = 1;
  double c = 0.4997;

  // Throws std::invalid_argument unless xi, delta1, delta2, eps are in (0, 1)
  // and 1 <= k <= kMaxK.
  void validate() const;
  double spike_value() const;        // k^4
  double spike_probability() const;  // 1 / k^3
};

// A member of the family's parameter set: p_1 = 1, p_2..p_4 in {0, 1/3, 1},
// p_5 in [0, 2 eps], p_6 in {0, 1/k^3}.
class ProbVector {
 public:
  // Throws std::invalid_argument if p is outside the set for `params`.
  ProbVector(const std::array<double, kBoxes>& p, const HardParams& params);

  double operator[](size_t i) const { return p_[i]; }
  const std::array<double, kBoxes>& values() const { return p_; }
  bool has_spike() const { return p_[5] > 0.0; }

 private:
  std::array<double, kBoxes> p_;
};

// Observed values after xi, each 0 or 1; empty is (xi).
using Prefix = std::vector<int>;

// All 31 prefixes: (xi), then (xi) x {0,1}^m for m = 1..4, lexicographic
// within each length.
std::vector<Prefix> enumerate_prefixes();

// Position of a prefix in enumerate_prefixes().
int prefix_index(std::span<const int> bits);

// The named prefixes (xi), (xi, 1), (xi, 0, 1), (xi, 0, 0, 1).
int t1_index();
int t2_index();
int t3_index();
int t4_index();

// Acceptance probability of the last value of a prefix given the number of
// ones among the samples.
class QPolicy {
 public:
  explicit QPolicy(int64_t k);  // all zeros

  int64_t k() const { return k_; }
  int64_t max_ones() const { return 4 * k_; }

  double operator()(int prefix, int64_t ones) const {
    return table_[static_cast<size_t>(prefix) * row_ + static_cast<size_t>(ones)];
  }
  // Throws std::invalid_argument if q is outside [0, 1].
  void set(int prefix, int64_t ones, double q);
  // Sets every ones-count of one prefix.
  void set_row(int prefix, double q);

  static QPolicy random(int64_t k, CounterRng& rng);

 private:
  int64_t k_;
  size_t row_;
  std::vector<double> table_;
};

// Law of the number of ones among the samples: sum over boxes 2..5 of
// Bin(k, p_i), on {0, ..., 4k}.
CountDist ones_count_dist(const ProbVector& p, int64_t k);

// Pr[k^4 appears among the samples] = 1 - (1 - p_6)^k.
double spike_event_prob(const ProbVector& p, int64_t k);

// E[max_i v_i] under F^p, by enumerating the 32 outcomes of boxes 2..6.
double prophet_value(const ProbVector& p, const HardParams& params);

// E_{ones ~ dist}[q(prefix, ones)]; with dist = ones_count_dist(p, k) this
// is the policy's expected acceptance at that prefix under F^p.
double q_expectation(const QPolicy& q, int prefix, const CountDist& dist);

// Exact E[ALG] under F^p for the algorithm described by q: the spike branch
// collects k^4 p_6; otherwise q is averaged over the ones-count law and
// the 32 value outcomes of boxes 2..6 are walked prefix by prefix. A
// nonzero last value is always taken; zeros never are.
double eval_q_policy(const ProbVector& p, const HardParams& params,
                     const QPolicy& q);

// Independent oracle for eval_q_policy: enumerates all 2^(5k) sample
// outcomes of boxes 2..6 and all value outcomes. Requires k <= 3.
double brute_force_eval(const ProbVector& p, const HardParams& params,
                        const QPolicy& q);

// sum_i Pr[ones = i] (q(t1, i) + (1 - q(t1, i)) q(t2, i)): the chance of
// stopping within the first two boxes when they show (xi, 1).
double over_selection_score(const QPolicy& q, const ProbVector& p, int64_t k);

// min(1, max(0, (x - k) / k + eps)).
double g_clamp(int64_t x, const HardParams& params);

enum class MixtureVariant {
  // Components k + Bin(k, g(j)); the component mean j + k eps matches the
  // target law's conditional mean.
  kMeanConsistent,
  // Components k + Bin(k, min(1, eps + g(j))).
  kAdditiveEps,
};

// D* = Bin(3k, 1/3) + Bin(k, eps), the ones count under
// p* = (1, 1/3, 1/3, 1/3, eps, 0); and the mixture D that draws
// j ~ Bin(3k, 1/3) and then the ones count under (1, 1, 0, 0, g(j), 0).
struct MixtureSpec {
  std::vector<double> coefficients;     // Pr[Bin(3k, 1/3) = j]
  std::vector<double> component_probs;  // success probability of component j
  int64_t k = 0;
  CountDist mixture = CountDist::point_mass(0);  // D
  CountDist target = CountDist::point_mass(0);   // D*

  // k + Bin(k, component_probs[j]).
  CountDist component(size_t j) const;
};

MixtureSpec build_dd_mixture(
    const HardParams& params,
    MixtureVariant variant = MixtureVariant::kMeanConsistent);

struct CertificateTerms {
  double select_xi;  // xi d1 + d2 - d1 + 2 eps
  double spike;      // 1 - d2
  double mixture;    // xi d1 8/27 + d2 12/27 + 7/27 + eps
  double value;      // max of the three
};

CertificateTerms certificate_terms(const HardParams& params);
double certificate(const HardParams& params);

// Which case of the hardness argument a policy falls into.
enum class Branch {
  kOverSelects,        // stops early on (xi, 1) w.p. >= d2 for some l
  kSelectsXi,          // takes xi w.p. >= d1 without over-selecting
  kLaterPrefix,        // accepts at (xi, 0, 1) or (xi, 0, 0, 1) w.p. >= d2
  kMixture,            // none of the above: p* is the hard instance
};

std::string branch_name(Branch b);

struct Candidate {
  std::string label;
  ProbVector p;
};

struct AdversaryResult {
  Candidate instance;  // argmin of the ratio over all candidates
  double alg_value = 0.0;
  double prophet_value = 0.0;
  double ratio = 0.0;

  Branch branch = Branch::kMixture;
  Candidate branch_instance;  // the instance the branch argument points to
  double branch_ratio = 0.0;
  double branch_bound = 0.0;  // proven upper bound on branch_ratio at this k
  double max_over_selection = 0.0;
  double max_q_t1 = 0.0;
};

// Evaluates policies against a fixed candidate set: for l on a 21-point
// grid over [0, 2 eps], the vectors (1,1,0,0,l,.), (1,0,1,0,l,.),
// (1,0,0,1,l,.) with and without the spike, plus p*. Per-candidate laws
// are computed once and shared across policies.
class Adversary {
 public:
  explicit Adversary(const HardParams& params);

  AdversaryResult evaluate(const QPolicy& q) const;

  const HardParams& params() const { return params_; }
  const std::vector<double>& ell_grid() const { return ell_grid_; }
  size_t candidate_count() const { return candidates_.size(); }

 private:
  struct Prepared {
    Candidate candidate;
    CountDist ones;
    double spike_prob;
    std::array<double, 32> outcome_prob;  // boxes 2..6, bit j-2 = v_j != 0
    double prophet;
  };

  Prepared prepare(const std::string& label,
                   const std::array<double, kBoxes>& p) const;
  double value_of(const Prepared& c,
                  const std::vector<std::array<double, 32>>& walk) const;

  HardParams params_;
  std::vector<double> ell_grid_;
  std::vector<Prepared> candidates_;
  // Indices into candidates_ per grid point.
  std::vector<size_t> p2_, p2_spike_, p3_, p3_spike_, p4_, p4_spike_;
  size_t p_star_ = 0;
};

AdversaryResult adversary(const QPolicy& q, const HardParams& params);

}  // namespace prophet::hardness

#endif  // PROPHET_HARDNESS_H_
