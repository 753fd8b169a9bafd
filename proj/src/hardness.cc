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

#include "prophet/hardness.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace prophet::hardness {
namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr int kOutcomes = 32;  // values of boxes 2..6
constexpr int kEllPoints = 21;

bool in_unit_open(double x) { return x > 0.0 && x < 1.0; }

// Probability of each outcome of boxes 2..6; bit (j - 2) set when box j
// shows its nonzero value.
std::array<double, kOutcomes> outcome_probs(const ProbVector& p) {
  std::array<double, kOutcomes> probs{};
  for (int mask = 0; mask < kOutcomes; ++mask) {
    double prob = 1.0;
    for (int b = 0; b < 5; ++b) {
      const double pj = p[static_cast<size_t>(b + 1)];
      prob *= (mask >> b) & 1 ? pj : 1.0 - pj;
    }
    probs[static_cast<size_t>(mask)] = prob;
  }
  return probs;
}

// Expected payoff of the q-walk for one value outcome and ones count,
// assuming no spike among the samples.
double walk(const QPolicy& q, const HardParams& params, int mask,
            int64_t ones) {
  double reach = 1.0;
  double payoff = 0.0;
  const double first = q(t1_index(), ones);
  payoff += first * params.xi;
  reach *= 1.0 - first;
  Prefix bits;
  for (int b = 0; b < 4; ++b) {
    const int bit = (mask >> b) & 1;
    bits.push_back(bit);
    if (bit == 0) continue;
    const double a = q(prefix_index(bits), ones);
    payoff += reach * a;
    reach *= 1.0 - a;
  }
  if ((mask >> 4) & 1) payoff += reach * params.spike_value();
  return payoff;
}

}  // namespace

void HardParams::validate() const {
  if (!in_unit_open(xi) || !in_unit_open(delta1) || !in_unit_open(delta2) ||
      !in_unit_open(eps)) {
    throw std::invalid_argument(
        "HardParams: xi, delta1, delta2, eps must lie in (0, 1)");
  }
  if (k < 1 || k > kMaxK) {
    throw std::invalid_argument("HardParams: k must be in [1, 10000]");
  }
}

double HardParams::spike_value() const {
  const double kd = static_cast<double>(k);
  return kd * kd * kd * kd;
}

double HardParams::spike_probability() const {
  const double kd = static_cast<double>(k);
  return 1.0 / (kd * kd * kd);
}

ProbVector::ProbVector(const std::array<double, kBoxes>& p,
                       const HardParams& params)
    : p_(p) {
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("ProbVector: " + why);
  };
  if (p_[0] != 1.0) fail("p_1 must be 1");
  for (size_t i = 1; i <= 3; ++i) {
    if (p_[i] != 0.0 && p_[i] != kThird && p_[i] != 1.0) {
      fail("p_2..p_4 must be 0, 1/3 or 1");
    }
  }
  if (!(p_[4] >= 0.0 && p_[4] <= 2.0 * params.eps)) {
    fail("p_5 must be in [0, 2 eps]");
  }
  if (p_[5] != 0.0 && p_[5] != params.spike_probability()) {
    fail("p_6 must be 0 or 1/k^3");
  }
}

std::vector<Prefix> enumerate_prefixes() {
  std::vector<Prefix> out;
  for (int len = 0; len <= 4; ++len) {
    for (int code = 0; code < (1 << len); ++code) {
      Prefix bits(static_cast<size_t>(len));
      for (int b = 0; b < len; ++b) {
        bits[static_cast<size_t>(b)] = (code >> (len - 1 - b)) & 1;
      }
      out.push_back(std::move(bits));
    }
  }
  return out;
}

int prefix_index(std::span<const int> bits) {
  if (bits.size() > 4) throw std::out_of_range("prefix longer than 5");
  int code = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("prefix bit not 0/1");
    code = 2 * code + b;
  }
  return (1 << bits.size()) - 1 + code;
}

int t1_index() { return 0; }
int t2_index() { return prefix_index(std::array{1}); }
int t3_index() { return prefix_index(std::array{0, 1}); }
int t4_index() { return prefix_index(std::array{0, 0, 1}); }

QPolicy::QPolicy(int64_t k)
    : k_(k),
      row_(static_cast<size_t>(4 * k + 1)),
      table_(static_cast<size_t>(kPrefixCount) * row_, 0.0) {
  if (k < 1) throw std::invalid_argument("QPolicy: k must be >= 1");
}

void QPolicy::set(int prefix, int64_t ones, double q) {
  if (prefix < 0 || prefix >= kPrefixCount || ones < 0 || ones > 4 * k_) {
    throw std::out_of_range("QPolicy::set: entry out of range");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("QPolicy::set: q outside [0, 1]");
  }
  table_[static_cast<size_t>(prefix) * row_ + static_cast<size_t>(ones)] = q;
}

void QPolicy::set_row(int prefix, double q) {
  for (int64_t i = 0; i <= 4 * k_; ++i) set(prefix, i, q);
}

QPolicy QPolicy::random(int64_t k, CounterRng& rng) {
  QPolicy q(k);
  for (double& entry : q.table_) entry = rng.uniform();
  return q;
}

CountDist ones_count_dist(const ProbVector& p, int64_t k) {
  const std::array<std::pair<int64_t, double>, 4> specs = {
      std::pair{k, p[1]}, {k, p[2]}, {k, p[3]}, {k, p[4]}};
  const CountDist sum = sum_of_binomials(specs);
  // Pad to the full support {0, ..., 4k}.
  std::vector<double> masses(static_cast<size_t>(4 * k + 1), 0.0);
  for (int64_t i = sum.min_value(); i <= sum.max_value(); ++i) {
    masses[static_cast<size_t>(i)] = sum.pmf(i);
  }
  return CountDist(0, std::move(masses));
}

double spike_event_prob(const ProbVector& p, int64_t k) {
  if (p[5] == 0.0) return 0.0;
  return -std::expm1(static_cast<double>(k) * std::log1p(-p[5]));
}

double prophet_value(const ProbVector& p, const HardParams& params) {
  const auto probs = outcome_probs(p);
  double value = 0.0;
  for (int mask = 0; mask < kOutcomes; ++mask) {
    double best = params.xi;
    if (mask & 0xF) best = 1.0;
    if (mask & 0x10) best = params.spike_value();
    value += probs[static_cast<size_t>(mask)] * best;
  }
  return value;
}

double q_expectation(const QPolicy& q, int prefix, const CountDist& dist) {
  return dist.expect([&](int64_t i) { return q(prefix, i); });
}

double eval_q_policy(const ProbVector& p, const HardParams& params,
                     const QPolicy& q) {
  if (q.k() != params.k) {
    throw std::invalid_argument("eval_q_policy: policy k differs from params");
  }
  const double spike = spike_event_prob(p, params.k);
  const CountDist ones = ones_count_dist(p, params.k);
  const auto probs = outcome_probs(p);
  double quiet = 0.0;
  for (int64_t i = 0; i <= 4 * params.k; ++i) {
    const double pi = ones.pmf(i);
    if (pi == 0.0) continue;
    double inner = 0.0;
    for (int mask = 0; mask < kOutcomes; ++mask) {
      const double pv = probs[static_cast<size_t>(mask)];
      if (pv == 0.0) continue;
      inner += pv * walk(q, params, mask, i);
    }
    quiet += pi * inner;
  }
  return spike * params.spike_value() * p[5] + (1.0 - spike) * quiet;
}

double brute_force_eval(const ProbVector& p, const HardParams& params,
                        const QPolicy& q) {
  const int64_t k = params.k;
  if (k > 3) throw std::invalid_argument("brute_force_eval: k must be <= 3");
  if (q.k() != k) {
    throw std::invalid_argument("brute_force_eval: policy k differs");
  }
  const double u[kBoxes] = {params.xi, 1.0, 1.0, 1.0, 1.0,
                            params.spike_value()};
  const int sample_bits = static_cast<int>(5 * k);
  double total = 0.0;
  for (int64_t smask = 0; smask < (int64_t{1} << sample_bits); ++smask) {
    // Sample s of box j (2..6) is bit (j - 2) * k + s.
    double sprob = 1.0;
    int64_t ones = 0;
    bool spike = false;
    for (int b = 0; b < sample_bits && sprob > 0.0; ++b) {
      const int box = 1 + b / static_cast<int>(k);
      const bool hit = (smask >> b) & 1;
      sprob *= hit ? p[static_cast<size_t>(box)]
                   : 1.0 - p[static_cast<size_t>(box)];
      if (hit && box <= 4) ++ones;
      if (hit && box == 5) spike = true;
    }
    if (sprob == 0.0) continue;

    for (int vmask = 0; vmask < 32; ++vmask) {
      double vprob = 1.0;
      double v[kBoxes];
      v[0] = u[0];
      for (int j = 1; j < kBoxes; ++j) {
        const bool hit = (vmask >> (j - 1)) & 1;
        vprob *= hit ? p[static_cast<size_t>(j)]
                     : 1.0 - p[static_cast<size_t>(j)];
        v[j] = hit ? u[j] : 0.0;
      }
      if (vprob == 0.0) continue;
      double payoff = 0.0;
      if (spike) {
        payoff = v[5];
      } else {
        double alive = 1.0;
        std::vector<int> seen;
        for (int j = 0; j < kBoxes; ++j) {
          if (j > 0 && j < 5) seen.push_back(v[j] > 0.0 ? 1 : 0);
          if (v[j] == 0.0) continue;
          const double accept =
              j == 5 ? 1.0 : q(prefix_index(seen), ones);
          payoff += alive * accept * v[j];
          alive *= 1.0 - accept;
        }
      }
      total += sprob * vprob * payoff;
    }
  }
  return total;
}

double over_selection_score(const QPolicy& q, const ProbVector& p, int64_t k) {
  const CountDist ones = ones_count_dist(p, k);
  return ones.expect([&](int64_t i) {
    const double a = q(t1_index(), i);
    return a + (1.0 - a) * q(t2_index(), i);
  });
}

double g_clamp(int64_t x, const HardParams& params) {
  const double kd = static_cast<double>(params.k);
  const double raw = (static_cast<double>(x) - kd) / kd + params.eps;
  return std::min(1.0, std::max(0.0, raw));
}

CountDist MixtureSpec::component(size_t j) const {
  const CountDist b = binom(k, component_probs.at(j));
  return convolve(CountDist::point_mass(k), b);
}

MixtureSpec build_dd_mixture(const HardParams& params,
                             MixtureVariant variant) {
  const int64_t k = params.k;
  MixtureSpec spec;
  spec.k = k;
  const CountDist x = binom(3 * k, kThird);
  spec.coefficients = x.masses();
  spec.component_probs.resize(spec.coefficients.size());
  std::vector<double> d(static_cast<size_t>(4 * k + 1), 0.0);
  for (size_t j = 0; j < spec.coefficients.size(); ++j) {
    double g = g_clamp(static_cast<int64_t>(j), params);
    if (variant == MixtureVariant::kAdditiveEps) {
      g = std::min(1.0, params.eps + g);
    }
    spec.component_probs[j] = g;
    const double c = spec.coefficients[j];
    if (c == 0.0) continue;
    const CountDist b = binom(k, g);
    for (int64_t i = b.min_value(); i <= b.max_value(); ++i) {
      d[static_cast<size_t>(k + i)] += c * b.pmf(i);
    }
  }
  spec.mixture = CountDist(0, std::move(d));
  spec.target = convolve(x, binom(k, params.eps));
  return spec;
}

CertificateTerms certificate_terms(const HardParams& params) {
  const double xi = params.xi;
  const double d1 = params.delta1;
  const double d2 = params.delta2;
  const double eps = params.eps;
  CertificateTerms t;
  t.select_xi = xi * d1 + d2 - d1 + 2.0 * eps;
  t.spike = 1.0 - d2;
  t.mixture =
      xi * d1 * (8.0 / 27.0) + d2 * (12.0 / 27.0) + 7.0 / 27.0 + eps;
  t.value = std::max({t.select_xi, t.spike, t.mixture});
  return t;
}

double certificate(const HardParams& params) {
  return certificate_terms(params).value;
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::kOverSelects:
      return "over_selects";
    case Branch::kSelectsXi:
      return "selects_xi";
    case Branch::kLaterPrefix:
      return "later_prefix";
    case Branch::kMixture:
      return "mixture";
  }
  return "unknown";
}

Adversary::Adversary(const HardParams& params) : params_(params) {
  params_.validate();
  const double two_eps = 2.0 * params_.eps;
  const double spike = params_.spike_probability();
  for (int i = 0; i < kEllPoints; ++i) {
    const double ell = two_eps * (static_cast<double>(i) / (kEllPoints - 1));
    ell_grid_.push_back(ell);
    auto add = [&](std::vector<size_t>& slot, const std::string& label,
                   std::array<double, kBoxes> p) {
      slot.push_back(candidates_.size());
      candidates_.push_back(prepare(label, p));
    };
    add(p2_, "p2", {1, 1, 0, 0, ell, 0});
    add(p2_spike_, "p2+spike", {1, 1, 0, 0, ell, spike});
    add(p3_, "p3", {1, 0, 1, 0, ell, 0});
    add(p3_spike_, "p3+spike", {1, 0, 1, 0, ell, spike});
    add(p4_, "p4", {1, 0, 0, 1, ell, 0});
    add(p4_spike_, "p4+spike", {1, 0, 0, 1, ell, spike});
  }
  p_star_ = candidates_.size();
  candidates_.push_back(
      prepare("p*", {1, kThird, kThird, kThird, params_.eps, 0}));
}

Adversary::Prepared Adversary::prepare(
    const std::string& label, const std::array<double, kBoxes>& p) const {
  ProbVector pv(p, params_);
  return Prepared{Candidate{label, pv}, ones_count_dist(pv, params_.k),
                  spike_event_prob(pv, params_.k), outcome_probs(pv),
                  prophet_value(pv, params_)};
}

double Adversary::value_of(
    const Prepared& c, const std::vector<std::array<double, 32>>& table) const {
  double quiet = 0.0;
  for (int64_t i = 0; i <= 4 * params_.k; ++i) {
    const double pi = c.ones.pmf(i);
    if (pi == 0.0) continue;
    const auto& row = table[static_cast<size_t>(i)];
    double inner = 0.0;
    for (int mask = 0; mask < kOutcomes; ++mask) {
      const double pv = c.outcome_prob[static_cast<size_t>(mask)];
      if (pv != 0.0) inner += pv * row[static_cast<size_t>(mask)];
    }
    quiet += pi * inner;
  }
  return c.spike_prob * params_.spike_value() * c.candidate.p[5] +
         (1.0 - c.spike_prob) * quiet;
}

AdversaryResult Adversary::evaluate(const QPolicy& q) const {
  if (q.k() != params_.k) {
    throw std::invalid_argument("Adversary: policy k differs from params");
  }
  const int64_t k = params_.k;
  std::vector<std::array<double, 32>> table(static_cast<size_t>(4 * k + 1));
  for (int64_t i = 0; i <= 4 * k; ++i) {
    for (int mask = 0; mask < kOutcomes; ++mask) {
      table[static_cast<size_t>(i)][static_cast<size_t>(mask)] =
          walk(q, params_, mask, i);
    }
  }

  std::vector<double> values(candidates_.size());
  AdversaryResult result{candidates_.front().candidate, 0.0, 0.0, 0.0,
                         Branch::kMixture, candidates_.back().candidate};
  result.ratio = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < candidates_.size(); ++c) {
    values[c] = value_of(candidates_[c], table);
    const double ratio = values[c] / candidates_[c].prophet;
    if (ratio < result.ratio) {
      result.ratio = ratio;
      result.instance = candidates_[c].candidate;
      result.alg_value = values[c];
      result.prophet_value = candidates_[c].prophet;
    }
  }
  auto ratio_of = [&](size_t c) { return values[c] / candidates_[c].prophet; };

  // Chance of stopping by the prefix `later` when the values read
  // (xi, ..., 1): accept xi, or reject it and accept at `later`.
  auto stop_score = [&](size_t c, int later) {
    return candidates_[c].ones.expect([&](int64_t i) {
      const double a = q(t1_index(), i);
      return a + (1.0 - a) * q(later, i);
    });
  };
  // Upper bound on the ratio of a spike instance when the policy stops
  // before box 6 with probability >= score on its quiet branch.
  auto spike_bound = [&](size_t c, double score) {
    const Prepared& s = candidates_[c];
    const double kd = static_cast<double>(k);
    const double alg =
        s.spike_prob * kd + (1.0 - s.spike_prob) * (1.0 + kd * (1.0 - score));
    return alg / s.prophet;
  };

  size_t best_over = 0;
  size_t best_xi = 0;
  for (size_t g = 0; g < ell_grid_.size(); ++g) {
    const double over = stop_score(p2_[g], t2_index());
    if (over > result.max_over_selection || g == 0) {
      result.max_over_selection = over;
      best_over = g;
    }
    const double xi_take = q_expectation(q, t1_index(), candidates_[p2_[g]].ones);
    if (xi_take > result.max_q_t1 || g == 0) {
      result.max_q_t1 = xi_take;
      best_xi = g;
    }
  }

  auto set_branch = [&](Branch b, size_t c, double bound) {
    result.branch = b;
    result.branch_instance = candidates_[c].candidate;
    result.branch_ratio = ratio_of(c);
    result.branch_bound = bound;
  };

  if (result.max_over_selection >= params_.delta2) {
    const size_t c = p2_spike_[best_over];
    set_branch(Branch::kOverSelects, c,
               spike_bound(c, result.max_over_selection));
    return result;
  }
  if (result.max_q_t1 >= params_.delta1) {
    set_branch(Branch::kSelectsXi, p2_[best_xi],
               certificate_terms(params_).select_xi);
    return result;
  }
  struct Later {
    const std::vector<size_t>* plain;
    const std::vector<size_t>* spiked;
    int prefix;
  };
  for (const Later& later : {Later{&p3_, &p3_spike_, t3_index()},
                             Later{&p4_, &p4_spike_, t4_index()}}) {
    for (size_t g = 0; g < ell_grid_.size(); ++g) {
      const size_t plain = (*later.plain)[g];
      if (q_expectation(q, later.prefix, candidates_[plain].ones) >=
          params_.delta2) {
        const size_t c = (*later.spiked)[g];
        set_branch(Branch::kLaterPrefix, c,
                   spike_bound(c, stop_score(plain, later.prefix)));
        return result;
      }
    }
  }
  // Only asymptotic: the mixture argument needs k large enough that the
  // relevant g(j) fall inside [0, 2 eps].
  set_branch(Branch::kMixture, p_star_,
             std::numeric_limits<double>::quiet_NaN());
  return result;
}

AdversaryResult adversary(const QPolicy& q, const HardParams& params) {
  return Adversary(params).evaluate(q);
}

}  // namespace prophet::hardness
