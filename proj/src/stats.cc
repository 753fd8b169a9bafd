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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace prophet {
namespace {

constexpr double kMassTolerance = 1e-10;

// Upper tail Pr[Z >= z].
double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

// Pr[a <= Z <= b] for standardized bounds, taken from the tail that avoids
// cancellation.
double normal_interval(double a, double b) {
  if (a > 0.0) return normal_sf(a) - normal_sf(b);
  return normal_cdf(b) - normal_cdf(a);
}

}  // namespace

CountDist::CountDist(int64_t offset, std::vector<double> masses)
    : offset_(offset), masses_(std::move(masses)) {
  if (masses_.empty()) throw std::invalid_argument("CountDist: empty");
  double total = 0.0;
  for (double m : masses_) {
    if (!(m >= 0.0)) {
      throw std::invalid_argument("CountDist: negative or NaN mass");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("CountDist: masses sum to " +
                                std::to_string(total));
  }
}

CountDist CountDist::point_mass(int64_t value) { return CountDist(value, {1.0}); }

double CountDist::pmf(int64_t i) const {
  if (i < min_value() || i > max_value()) return 0.0;
  return masses_[static_cast<size_t>(i - offset_)];
}

double CountDist::mean() const {
  double m = 0.0;
  for (size_t i = 0; i < masses_.size(); ++i) {
    m += masses_[i] * static_cast<double>(offset_ + static_cast<int64_t>(i));
  }
  return m;
}

double CountDist::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (size_t i = 0; i < masses_.size(); ++i) {
    const double d =
        static_cast<double>(offset_ + static_cast<int64_t>(i)) - mu;
    v += masses_[i] * d * d;
  }
  return v;
}

double CountDist::expect(const std::function<double(int64_t)>& f) const {
  double e = 0.0;
  for (size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] == 0.0) continue;
    e += masses_[i] * f(offset_ + static_cast<int64_t>(i));
  }
  return e;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

CountDist binom(int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binom: n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binom: p outside [0, 1]");
  }
  if (p == 0.0) return CountDist::point_mass(0);
  if (p == 1.0) return CountDist::point_mass(n);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  std::vector<double> logs(static_cast<size_t>(n) + 1);
  double top = -INFINITY;
  for (int64_t i = 0; i <= n; ++i) {
    const double di = static_cast<double>(i);
    const double l = log_n_fact - std::lgamma(di + 1.0) -
                     std::lgamma(static_cast<double>(n - i) + 1.0) +
                     di * log_p + static_cast<double>(n - i) * log_q;
    logs[static_cast<size_t>(i)] = l;
    top = std::max(top, l);
  }
  double total = 0.0;
  for (double& l : logs) {
    l = std::exp(l - top);
    total += l;
  }
  for (double& l : logs) l /= total;
  return CountDist(0, std::move(logs));
}

CountDist convolve(const CountDist& a, const CountDist& b) {
  const auto& ma = a.masses();
  const auto& mb = b.masses();
  std::vector<double> out(ma.size() + mb.size() - 1, 0.0);
  for (size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] == 0.0) continue;
    for (size_t j = 0; j < mb.size(); ++j) out[i + j] += ma[i] * mb[j];
  }
  return CountDist(a.offset() + b.offset(), std::move(out));
}

CountDist sum_of_binomials(std::span<const std::pair<int64_t, double>> specs) {
  CountDist total = CountDist::point_mass(0);
  for (const auto& [n, p] : specs) total = convolve(total, binom(n, p));
  return total;
}

CountDist mixture(std::span<const double> coefficients,
                  std::span<const CountDist> components) {
  if (coefficients.size() != components.size() || components.empty()) {
    throw std::invalid_argument("mixture: size mismatch");
  }
  int64_t lo = components.front().min_value();
  int64_t hi = components.front().max_value();
  for (const CountDist& c : components) {
    lo = std::min(lo, c.min_value());
    hi = std::max(hi, c.max_value());
  }
  std::vector<double> out(static_cast<size_t>(hi - lo + 1), 0.0);
  for (size_t j = 0; j < components.size(); ++j) {
    if (coefficients[j] < 0.0) {
      throw std::invalid_argument("mixture: negative coefficient");
    }
    if (coefficients[j] == 0.0) continue;
    const CountDist& c = components[j];
    const size_t shift = static_cast<size_t>(c.offset() - lo);
    for (size_t i = 0; i < c.masses().size(); ++i) {
      out[shift + i] += coefficients[j] * c.masses()[i];
    }
  }
  return CountDist(lo, std::move(out));
}

CountDist discretized_normal(const NormalSpec& spec, int64_t lo, int64_t hi) {
  if (hi < lo) throw std::invalid_argument("discretized_normal: hi < lo");
  if (!(spec.sigma2 > 0.0)) {
    throw std::invalid_argument("discretized_normal: sigma2 must be > 0");
  }
  const double sigma = std::sqrt(spec.sigma2);
  auto z = [&](double x) { return (x - spec.mu) / sigma; };
  std::vector<double> masses(static_cast<size_t>(hi - lo + 1));
  for (int64_t i = lo; i <= hi; ++i) {
    const double a = i == lo ? -INFINITY : z(static_cast<double>(i) - 0.5);
    const double b = i == hi ? INFINITY : z(static_cast<double>(i) + 0.5);
    masses[static_cast<size_t>(i - lo)] = normal_interval(a, b);
  }
  return CountDist(lo, std::move(masses));
}

double tv_distance(const CountDist& a, const CountDist& b) {
  const int64_t lo = std::min(a.min_value(), b.min_value());
  const int64_t hi = std::max(a.max_value(), b.max_value());
  double sum = 0.0;
  for (int64_t i = lo; i <= hi; ++i) sum += std::abs(a.pmf(i) - b.pmf(i));
  return std::min(0.5 * sum, 1.0);
}

double tv_binom_vs_normal(int64_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("tv_binom_vs_normal: p must be in (0, 1)");
  }
  const CountDist x = binom(n, p);
  const double mu = static_cast<double>(n) * p;
  const double sigma = std::sqrt(mu * (1.0 - p));
  auto z = [&](double v) { return (v - mu) / sigma; };
  double sum = 0.0;
  for (int64_t i = 0; i <= n; ++i) {
    const double di = static_cast<double>(i);
    sum += std::abs(x.pmf(i) - normal_interval(z(di - 0.5), z(di + 0.5)));
  }
  // Bins below 0 and above n telescope to the two normal tails.
  sum += normal_cdf(z(-0.5));
  sum += normal_sf(z(static_cast<double>(n) + 0.5));
  return sum;
}

double tv_same_mean_normals(const NormalSpec& s1, const NormalSpec& s2) {
  if (s1.mu != s2.mu) {
    throw std::invalid_argument("tv_same_mean_normals: means differ");
  }
  if (!(s1.sigma2 > 0.0 && s2.sigma2 > 0.0)) {
    throw std::invalid_argument("tv_same_mean_normals: sigma2 must be > 0");
  }
  if (s1.sigma2 == s2.sigma2) return 0.0;
  const double v_small = std::min(s1.sigma2, s2.sigma2);
  const double v_large = std::max(s1.sigma2, s2.sigma2);
  // phi_small > phi_large exactly on (-c, c).
  const double c = std::sqrt(v_small * v_large * std::log(v_large / v_small) /
                             (v_large - v_small));
  return std::erf(c / std::sqrt(2.0 * v_small)) -
         std::erf(c / std::sqrt(2.0 * v_large));
}

ChernoffReport chernoff_check(std::span<const double> probs, double delta,
                              int64_t reps, CounterRng& rng) {
  if (reps < 10000) {
    throw std::invalid_argument("chernoff_check: reps must be >= 10^4");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("chernoff_check: delta must be in (0, 1)");
  }
  // Equal probabilities are drawn as one binomial; same law as the sum of
  // the individual Bernoulli draws.
  std::map<double, int64_t> groups;
  double mu = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("chernoff_check: probability outside [0, 1]");
    }
    mu += p;
    if (p > 0.0) ++groups[p];
  }
  ChernoffReport report;
  report.mu = mu;
  report.delta = delta;
  report.reps = reps;
  report.bound = 2.0 * std::exp(-delta * delta * mu / 3.0);
  int64_t hits = 0;
  // With mu = 0 the sum is identically 0 and no deviation can occur.
  if (mu > 0.0) {
    for (int64_t r = 0; r < reps; ++r) {
      int64_t x = 0;
      for (const auto& [p, count] : groups) {
        if (p == 1.0) {
          x += count;
          continue;
        }
        std::binomial_distribution<int64_t> dist(count, p);
        x += dist(rng);
      }
      if (std::abs(static_cast<double>(x) - mu) >= delta * mu) ++hits;
    }
  }
  const double f = static_cast<double>(hits) / static_cast<double>(reps);
  report.empirical = f;
  report.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(reps));
  report.pass = report.empirical <= report.bound + 3.0 * report.std_error;
  return report;
}

}  // namespace prophet
