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

#include "prophet/evaluation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "prophet/parallel.h"

namespace prophet {
namespace {

constexpr double kCiZ = 1.96;
constexpr int64_t kMaxEnumeration = 4'000'000;

struct Draw {
  double value;
  double rank;
  bool operator>(const Draw& o) const {
    return value > o.value || (value == o.value && rank > o.rank);
  }
};

RatioReport summarize(std::span<const double> payoffs, double prophet,
                      uint64_t seed) {
  RatioReport report;
  report.reps = static_cast<int64_t>(payoffs.size());
  report.seed = seed;
  report.prophet_value = prophet;
  const double n = static_cast<double>(payoffs.size());
  report.alg_value = pairwise_sum(payoffs) / n;
  const auto [lo, hi] = std::minmax_element(payoffs.begin(), payoffs.end());
  if (payoffs.size() > 1 && *lo != *hi) {
    std::vector<double> sq(payoffs.size());
    for (size_t i = 0; i < payoffs.size(); ++i) {
      const double d = payoffs[i] - report.alg_value;
      sq[i] = d * d;
    }
    const double sd = std::sqrt(pairwise_sum(sq) / (n - 1.0));
    report.ci_halfwidth = kCiZ * sd / std::sqrt(n);
  }
  report.ratio = report.alg_value / prophet;
  return report;
}

// Merged atoms of a discrete box.
std::vector<std::pair<double, double>> atoms_of(const ValueDist& d) {
  std::map<double, double> merged;
  for (const Segment& s : d.segments()) {
    if (!s.is_atom()) {
      throw std::invalid_argument("exact evaluation needs an all-atoms box");
    }
    if (s.weight > 0.0) merged[s.lo] += s.weight;
  }
  return {merged.begin(), merged.end()};
}

// One replication of the literal online process: (ALG payoff, max value).
struct Replication {
  double alg;
  double max;
};

class Simulator {
 public:
  Simulator(const Instance& inst, const ThresholdRule& rule, int64_t k,
            uint64_t seed)
      : inst_(inst), rule_(rule), k_(k), seed_(seed) {
    const int64_t rank = rule_rank(rule);
    const int64_t total = k * static_cast<int64_t>(inst.size());
    if (rank < 0 || rank > total) {
      throw std::out_of_range("threshold rank " + std::to_string(rank) +
                              " outside [1, " + std::to_string(total) + "]");
    }
  }

  Replication run(int64_t r, std::vector<Draw>& pool,
                  std::vector<double>& values,
                  std::vector<double>& ranks) const {
    CounterRng sample_rng = replication_rng(seed_, r, Substream::kSamples);
    Draw threshold{};
    if (const auto* e = std::get_if<ExplicitThreshold>(&rule_)) {
      threshold = {e->t, sample_rng.uniform()};
    } else {
      pool.clear();
      for (const ValueDist& d : inst_.boxes()) {
        for (int64_t j = 0; j < k_; ++j) {
          const double v = sample(d, sample_rng);
          pool.push_back({v, sample_rng.uniform()});
        }
      }
      const auto nth = pool.begin() + (rule_rank(rule_) - 1);
      std::nth_element(pool.begin(), nth, pool.end(), std::greater<>());
      threshold = *nth;
    }
    CounterRng value_rng = replication_rng(seed_, r, Substream::kValues);
    values.clear();
    ranks.clear();
    double max_value = 0.0;
    for (const ValueDist& d : inst_.boxes()) {
      const double v = sample(d, value_rng);
      values.push_back(v);
      ranks.push_back(value_rng.uniform());
      max_value = std::max(max_value, v);
    }
    return {run_static_threshold(values, ranks, threshold.value,
                                 threshold.rank),
            max_value};
  }

 private:
  const Instance& inst_;
  const ThresholdRule& rule_;
  int64_t k_;
  uint64_t seed_;
};

std::vector<Replication> simulate(const Instance& inst,
                                  const ThresholdRule& rule, int64_t k,
                                  int64_t reps, uint64_t seed, int threads) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const Simulator sim(inst, rule, k, seed);
  std::vector<Replication> out(static_cast<size_t>(reps));
  parallel_for(reps, threads, [&](int64_t r) {
    thread_local std::vector<Draw> pool;
    thread_local std::vector<double> values;
    thread_local std::vector<double> ranks;
    out[static_cast<size_t>(r)] = sim.run(r, pool, values, ranks);
  });
  return out;
}

std::vector<double> survival_grid(const Instance& inst) {
  const std::vector<double> points = inst.breakpoints();
  std::vector<double> grid;
  for (size_t i = 0; i < points.size(); ++i) {
    if (i > 0) {
      const double mid = 0.5 * (points[i - 1] + points[i]);
      if (mid > 0.0) grid.push_back(mid);
    }
    if (points[i] > 0.0) grid.push_back(points[i]);
  }
  return grid;
}

double max_survival_at(const Instance& inst, double x) {
  double below = 1.0;
  for (const ValueDist& d : inst.boxes()) below *= d.cdf_below(x);
  return 1.0 - below;
}

}  // namespace

RatioReport mc_ratio(const Instance& inst, const ThresholdRule& rule,
                     int64_t k, int64_t reps, uint64_t seed, int threads) {
  const std::vector<Replication> runs =
      simulate(inst, rule, k, reps, seed, threads);
  std::vector<double> payoffs(runs.size());
  for (size_t i = 0; i < runs.size(); ++i) payoffs[i] = runs[i].alg;
  return summarize(payoffs, prophet_expectation(inst), seed);
}

RatioReport semi_exact_ordinal(const Instance& inst, int64_t k, int64_t rank,
                               int64_t reps, uint64_t seed, int threads) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  const int64_t total = k * static_cast<int64_t>(inst.size());
  if (k < 1 || rank < 1 || rank > total) {
    throw std::out_of_range("semi_exact_ordinal: rank " +
                            std::to_string(rank) + " outside [1, " +
                            std::to_string(total) + "]");
  }
  std::vector<double> payoffs(static_cast<size_t>(reps));
  parallel_for(reps, threads, [&](int64_t r) {
    CounterRng rng = replication_rng(seed, r, Substream::kSamples);
    const OrderStatistic t = draw_order_statistic(inst, k, rank, rng);
    payoffs[static_cast<size_t>(r)] = exact_static_threshold_value(inst, t);
  });
  return summarize(payoffs, prophet_expectation(inst), seed);
}

std::vector<std::pair<OrderStatistic, double>> exact_threshold_distribution(
    const Instance& inst, int64_t k, const ThresholdRule& rule) {
  if (const auto* e = std::get_if<ExplicitThreshold>(&rule)) {
    return {{OrderStatistic{e->t, 1, 1}, 1.0}};
  }
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<std::vector<std::pair<double, double>>> supports;
  double combos = 1.0;
  for (const ValueDist& d : inst.boxes()) {
    supports.push_back(atoms_of(d));
    combos *= std::pow(static_cast<double>(supports.back().size()),
                       static_cast<double>(k));
  }
  if (combos > static_cast<double>(kMaxEnumeration)) {
    throw std::invalid_argument("exact enumeration: too many sample vectors");
  }
  const size_t draws = static_cast<size_t>(k) * inst.size();
  const int64_t rank = rule_rank(rule);
  if (rank < 1 || rank > static_cast<int64_t>(draws)) {
    throw std::out_of_range("exact enumeration: rank outside sample set");
  }
  auto box_of = [k](size_t d) { return d / static_cast<size_t>(k); };

  std::map<std::tuple<double, int64_t, int64_t>, double> law;
  std::vector<size_t> index(draws, 0);
  std::vector<double> values(draws);
  for (;;) {
    double prob = 1.0;
    for (size_t d = 0; d < draws; ++d) {
      const auto& atom = supports[box_of(d)][index[d]];
      values[d] = atom.first;
      prob *= atom.second;
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    const double t = values[static_cast<size_t>(rank - 1)];
    const auto range =
        std::equal_range(values.begin(), values.end(), t, std::greater<>());
    const int64_t above = range.first - values.begin();
    law[{t, rank - above, range.second - range.first}] += prob;

    size_t d = 0;
    while (d < draws && ++index[d] == supports[box_of(d)].size()) {
      index[d] = 0;
      ++d;
    }
    if (d == draws) break;
  }
  std::vector<std::pair<OrderStatistic, double>> out;
  out.reserve(law.size());
  for (const auto& [key, prob] : law) {
    out.push_back({OrderStatistic{std::get<0>(key), std::get<1>(key),
                                  std::get<2>(key)},
                   prob});
  }
  return out;
}

double exact_ordinal_value(const Instance& inst, int64_t k,
                           const ThresholdRule& rule) {
  double value = 0.0;
  for (const auto& [t, prob] : exact_threshold_distribution(inst, k, rule)) {
    value += prob * exact_static_threshold_value(inst, t);
  }
  return value;
}

double exact_single_sample_value(const Instance& inst) {
  if (inst.size() > 6) {
    throw std::invalid_argument("exact_single_sample_value: n > 6");
  }
  for (const ValueDist& d : inst.boxes()) {
    if (atoms_of(d).size() > 6) {
      throw std::invalid_argument(
          "exact_single_sample_value: support larger than 6");
    }
  }
  return exact_ordinal_value(inst, 1, MaxSample{});
}

DominanceReport dominance_check(const Instance& inst,
                                const ThresholdRule& rule, int64_t k,
                                double gamma,
                                const DominanceOptions& options) {
  DominanceReport report;
  report.gamma = gamma;
  const std::vector<double> grid = survival_grid(inst);

  std::vector<double> alg(grid.size(), 0.0);
  std::vector<double> opt(grid.size(), 0.0);
  if (options.mode == DominanceMode::kExact) {
    const auto law = exact_threshold_distribution(inst, k, rule);
    for (size_t g = 0; g < grid.size(); ++g) {
      for (const auto& [t, prob] : law) {
        alg[g] += prob * threshold_survival(inst, t, grid[g]);
      }
      opt[g] = max_survival_at(inst, grid[g]);
    }
  } else {
    const std::vector<Replication> runs =
        simulate(inst, rule, k, options.reps, options.seed, options.threads);
    const double n = static_cast<double>(runs.size());
    for (size_t g = 0; g < grid.size(); ++g) {
      int64_t alg_hits = 0;
      int64_t opt_hits = 0;
      for (const Replication& run : runs) {
        alg_hits += run.alg >= grid[g];
        opt_hits += run.max >= grid[g];
      }
      alg[g] = static_cast<double>(alg_hits) / n;
      opt[g] = static_cast<double>(opt_hits) / n;
    }
  }

  for (size_t g = 0; g < grid.size(); ++g) {
    if (!(opt[g] > 0.0)) continue;
    report.grid.push_back(grid[g]);
    report.alg_survival.push_back(alg[g]);
    report.max_survival.push_back(opt[g]);
    const double ratio = alg[g] / opt[g];
    if (ratio < report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_x = grid[g];
    }
  }
  report.pass = report.worst_ratio >= gamma - 1e-9;
  return report;
}

Instance case1_instance(int64_t k) {
  if (k < 2) throw std::invalid_argument("case1_instance: k must be >= 2");
  const double kd = static_cast<double>(k);
  const double spike = 1.0 / (kd * kd);
  const double top = kd * kd * kd;
  return Instance({ValueDist::uniform(1.0, 2.0),
                   ValueDist({{1.0 - spike, 0.0, 1.0}, {spike, top, top + 1.0}})});
}

Instance case2_instance(int64_t k, int64_t n) {
  if (n < 2) throw std::invalid_argument("case2_instance: n must be >= 2");
  const double kd = static_cast<double>(k);
  return Instance(std::vector<ValueDist>(static_cast<size_t>(n),
                                         ValueDist::uniform(kd, kd + 1.0)));
}

int64_t case2_default_boxes(int64_t k) {
  const double fourth_root = std::sqrt(std::sqrt(static_cast<double>(k)));
  return std::max<int64_t>(2, static_cast<int64_t>(std::floor(fourth_root)));
}

std::vector<SweepRow> ordinal_upper_bound_sweep(int64_t k,
                                                std::span<const int64_t> ranks,
                                                int64_t reps, uint64_t seed,
                                                int threads) {
  const Instance first = case1_instance(k);
  const int64_t n = case2_default_boxes(k);
  const Instance second = case2_instance(k, n);
  std::vector<SweepRow> rows;
  for (int64_t rank : ranks) {
    SweepRow row;
    row.rank = rank;
    row.case2_boxes = n;
    row.case1 = semi_exact_ordinal(first, k, rank, reps, seed, threads);
    row.case2 = semi_exact_ordinal(second, k, rank, reps, seed, threads);
    row.min_ratio = std::min(row.case1.ratio, row.case2.ratio);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::vector<double> random_weights(CounterRng& rng, size_t count) {
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) {
    x = 0.05 + rng.uniform();
    total += x;
  }
  double used = 0.0;
  for (size_t i = 0; i + 1 < count; ++i) {
    w[i] /= total;
    used += w[i];
  }
  w.back() = std::max(0.0, 1.0 - used);
  return w;
}

int64_t uniform_int(CounterRng& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

}  // namespace

Instance random_discrete_instance(CounterRng& rng, int max_boxes,
                                  int max_support) {
  const int64_t n = uniform_int(rng, 1, max_boxes);
  std::vector<ValueDist> boxes;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t support = uniform_int(rng, 1, max_support);
    std::vector<double> values;
    while (static_cast<int64_t>(values.size()) < support) {
      const double v = static_cast<double>(uniform_int(rng, 0, 8));
      if (std::find(values.begin(), values.end(), v) == values.end()) {
        values.push_back(v);
      }
    }
    const std::vector<double> probs =
        random_weights(rng, static_cast<size_t>(support));
    boxes.push_back(ValueDist::discrete(values, probs));
  }
  return Instance(std::move(boxes));
}

Instance random_mixture_instance(CounterRng& rng, int max_boxes) {
  const int64_t n = uniform_int(rng, 2, max_boxes);
  std::vector<ValueDist> boxes;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t count = uniform_int(rng, 1, 3);
    const std::vector<double> w = random_weights(rng, static_cast<size_t>(count));
    std::vector<Segment> segments;
    for (int64_t s = 0; s < count; ++s) {
      const double lo = 10.0 * rng.uniform();
      const double width = rng.uniform() < 0.2 ? 0.0 : 3.0 * rng.uniform();
      segments.push_back({w[static_cast<size_t>(s)], lo, lo + width});
    }
    boxes.push_back(ValueDist(std::move(segments)));
  }
  return Instance(std::move(boxes));
}

}  // namespace prophet
