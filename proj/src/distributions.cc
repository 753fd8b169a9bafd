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

#include "prophet/distributions.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "prophet/quadrature.h"

namespace prophet {
namespace {

constexpr double kWeightTolerance = 1e-12;

double segment_cdf(const Segment& s, double x) {
  if (s.is_atom()) return x >= s.lo ? 1.0 : 0.0;
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return 1.0;
  return (x - s.lo) / (s.hi - s.lo);
}

double segment_cdf_below(const Segment& s, double x) {
  if (s.is_atom()) return x > s.lo ? 1.0 : 0.0;
  return segment_cdf(s, x);
}

// E[v * 1{v > t}] for a single uniform component.
double segment_tail(const Segment& s, double t) {
  if (s.is_atom()) return s.lo > t ? s.lo : 0.0;
  if (t >= s.hi) return 0.0;
  const double a = std::max(s.lo, t);
  return (s.hi * s.hi - a * a) / (2.0 * (s.hi - s.lo));
}

// Beta(a, b) via the gamma ratio.
double draw_beta(double a, double b, CounterRng& rng) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  return x / (x + y);
}

int64_t draw_binomial(int64_t trials, double p, CounterRng& rng) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<int64_t> dist(trials, p);
  return dist(rng);
}

}  // namespace

ValueDist::ValueDist(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw std::invalid_argument("ValueDist: no segments");
  }
  double total = 0.0;
  for (const Segment& s : segments_) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || s.lo < 0.0 ||
        s.hi < s.lo) {
      throw std::invalid_argument("ValueDist: bad segment bounds [" +
                                  std::to_string(s.lo) + ", " +
                                  std::to_string(s.hi) + "]");
    }
    if (!(s.weight >= 0.0 && s.weight <= 1.0)) {
      throw std::invalid_argument("ValueDist: weight outside [0, 1]");
    }
    total += s.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw std::invalid_argument("ValueDist: weights sum to " +
                                std::to_string(total));
  }
  std::stable_sort(
      segments_.begin(), segments_.end(),
      [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
}

ValueDist ValueDist::atom(double x) { return ValueDist({{1.0, x, x}}); }

ValueDist ValueDist::uniform(double lo, double hi) {
  return ValueDist({{1.0, lo, hi}});
}

ValueDist ValueDist::discrete(std::span<const double> values,
                              std::span<const double> probs) {
  if (values.size() != probs.size()) {
    throw std::invalid_argument("ValueDist::discrete: size mismatch");
  }
  std::vector<Segment> segments;
  for (size_t i = 0; i < values.size(); ++i) {
    segments.push_back({probs[i], values[i], values[i]});
  }
  return ValueDist(std::move(segments));
}

double ValueDist::mean() const {
  double m = 0.0;
  for (const Segment& s : segments_) m += s.weight * 0.5 * (s.lo + s.hi);
  return m;
}

double ValueDist::support_min() const {
  double lo = segments_.front().lo;
  for (const Segment& s : segments_) {
    if (s.weight > 0.0) return s.lo;
  }
  return lo;
}

double ValueDist::support_max() const {
  double hi = 0.0;
  for (const Segment& s : segments_) {
    if (s.weight > 0.0) hi = std::max(hi, s.hi);
  }
  return hi;
}

bool ValueDist::is_discrete() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.is_atom(); });
}

double ValueDist::atom_mass(double x) const {
  double m = 0.0;
  for (const Segment& s : segments_) {
    if (s.is_atom() && s.lo == x) m += s.weight;
  }
  return m;
}

double ValueDist::cdf_below(double x) const {
  double c = 0.0;
  for (const Segment& s : segments_) c += s.weight * segment_cdf_below(s, x);
  return std::min(c, 1.0);
}

Instance::Instance(std::vector<ValueDist> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) throw std::invalid_argument("Instance: no boxes");
}

std::vector<double> Instance::breakpoints() const {
  std::vector<double> points;
  for (const ValueDist& d : boxes_) {
    for (const Segment& s : d.segments()) {
      points.push_back(s.lo);
      points.push_back(s.hi);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool Instance::is_discrete() const {
  return std::all_of(boxes_.begin(), boxes_.end(),
                     [](const ValueDist& d) { return d.is_discrete(); });
}

SampleSet::SampleSet(std::vector<double> values, int64_t k)
    : values_(std::move(values)), k_(k) {
  if (k_ < 1) throw std::invalid_argument("SampleSet: k must be >= 1");
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

double cdf(const ValueDist& d, double x) {
  double c = 0.0;
  for (const Segment& s : d.segments()) c += s.weight * segment_cdf(s, x);
  return std::min(c, 1.0);
}

double tail_expectation(const ValueDist& d, double t) {
  double e = 0.0;
  for (const Segment& s : d.segments()) e += s.weight * segment_tail(s, t);
  return e;
}

double sample(const ValueDist& d, CounterRng& rng) {
  const auto& segs = d.segments();
  const double u = rng.uniform();
  double acc = 0.0;
  size_t pick = segs.size() - 1;
  for (size_t i = 0; i < segs.size(); ++i) {
    acc += segs[i].weight;
    if (u < acc) {
      pick = i;
      break;
    }
  }
  // Rounding can leave u >= acc; fall back to the last weighted segment.
  while (pick > 0 && segs[pick].weight == 0.0) --pick;
  const Segment& s = segs[pick];
  if (s.is_atom()) return s.lo;
  return s.lo + (s.hi - s.lo) * rng.uniform();
}

double product_cdf(const Instance& inst, double x) {
  double f = 1.0;
  for (const ValueDist& d : inst.boxes()) f *= cdf(d, x);
  return f;
}

double prophet_expectation(const Instance& inst) {
  std::vector<double> points = inst.breakpoints();
  if (points.front() > 0.0) points.insert(points.begin(), 0.0);
  const int nodes = static_cast<int>((inst.size() + 2) / 2);
  double total = 0.0;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    total += integrate_gauss(
        [&inst](double x) { return 1.0 - product_cdf(inst, x); }, points[i],
        points[i + 1], nodes);
  }
  return total;
}

SampleSet draw_sample_set(const Instance& inst, int64_t k, CounterRng& rng) {
  if (k < 1) throw std::invalid_argument("draw_sample_set: k must be >= 1");
  std::vector<double> values;
  values.reserve(static_cast<size_t>(k) * inst.size());
  for (const ValueDist& d : inst.boxes()) {
    for (int64_t j = 0; j < k; ++j) values.push_back(sample(d, rng));
  }
  return SampleSet(std::move(values), k);
}

int64_t occurrences(const SampleSet& s, double x) {
  const auto range = std::equal_range(s.values().begin(), s.values().end(), x,
                                      std::greater<>());
  return range.second - range.first;
}

OrderStatistic draw_order_statistic(const Instance& inst, int64_t k,
                                    int64_t rank, CounterRng& rng) {
  const int64_t total = k * static_cast<int64_t>(inst.size());
  if (k < 1 || rank < 1 || rank > total) {
    throw std::out_of_range("draw_order_statistic: rank " +
                            std::to_string(rank) + " outside [1, " +
                            std::to_string(total) + "]");
  }
  const std::vector<double> points = inst.breakpoints();
  const size_t m = points.size();
  // interval_count[t] counts points in (points[t], points[t+1]);
  // atom_count[t] counts points equal to points[t].
  std::vector<int64_t> interval_count(m, 0);
  std::vector<int64_t> atom_count(m, 0);
  auto index_of = [&points](double x) {
    return static_cast<size_t>(
        std::lower_bound(points.begin(), points.end(), x) - points.begin());
  };

  for (const ValueDist& d : inst.boxes()) {
    const auto& segs = d.segments();
    size_t last_weighted = segs.size() - 1;
    while (last_weighted > 0 && segs[last_weighted].weight == 0.0) {
      --last_weighted;
    }
    int64_t remaining = k;
    double remaining_weight = 1.0;
    for (size_t si = 0; si <= last_weighted && remaining > 0; ++si) {
      const Segment& s = segs[si];
      const int64_t c =
          si == last_weighted
              ? remaining
              : draw_binomial(remaining,
                              std::min(s.weight / remaining_weight, 1.0), rng);
      remaining -= c;
      remaining_weight -= s.weight;
      if (c == 0) continue;
      if (s.is_atom()) {
        atom_count[index_of(s.lo)] += c;
        continue;
      }
      // Split c uniform points over the elementary intervals of [lo, hi].
      const size_t first = index_of(s.lo);
      const size_t last = index_of(s.hi);
      int64_t left = c;
      double left_len = s.hi - s.lo;
      for (size_t t = first; t < last && left > 0; ++t) {
        const double len = points[t + 1] - points[t];
        const int64_t ct =
            t + 1 == last ? left
                          : draw_binomial(left, std::min(len / left_len, 1.0),
                                          rng);
        interval_count[t] += ct;
        left -= ct;
        left_len -= len;
      }
    }
  }

  int64_t above = 0;
  for (size_t t = m; t-- > 0;) {
    if (above + atom_count[t] >= rank) {
      return {points[t], rank - above, atom_count[t]};
    }
    above += atom_count[t];
    if (t == 0) break;
    const int64_t c = interval_count[t - 1];
    if (above + c >= rank) {
      const int64_t j = rank - above;
      // j-th highest of c uniforms on the interval.
      const double u = draw_beta(static_cast<double>(c - j + 1),
                                 static_cast<double>(j), rng);
      const double lo = points[t - 1];
      const double hi = points[t];
      return {lo + (hi - lo) * u, 1, 1};
    }
    above += c;
  }
  throw std::logic_error("draw_order_statistic: counts do not reach rank");
}

}  // namespace prophet
