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

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace prophet {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Per-box quantities at the threshold value.
struct BoxAtThreshold {
  double below;  // Pr[v < T]
  double tie;    // Pr[v = T]
  double gain;   // payoff (or probability) from v > T
  double tie_gain_per_win;  // multiplied by tie * (1 - r)
};

// E over r ~ Beta(alpha, beta) of
//   sum_i prod_{j<i} (below_j + tie_j r) * (gain_i + tie_i w_i (1 - r)).
double integrate_tie_rank(std::span<const BoxAtThreshold> boxes,
                          const OrderStatistic& threshold) {
  const bool any_tie = std::any_of(boxes.begin(), boxes.end(),
                                   [](const auto& b) { return b.tie > 0.0; });
  if (!any_tie) {
    double reach = 1.0;
    double total = 0.0;
    for (const auto& b : boxes) {
      total += reach * b.gain;
      reach *= b.below;
    }
    return total;
  }
  // Coefficients in powers of r.
  std::vector<double> reach = {1.0};
  std::vector<double> total(boxes.size() + 2, 0.0);
  for (const auto& b : boxes) {
    const double c0 = b.gain + b.tie * b.tie_gain_per_win;
    const double c1 = -b.tie * b.tie_gain_per_win;
    for (size_t d = 0; d < reach.size(); ++d) {
      total[d] += reach[d] * c0;
      total[d + 1] += reach[d] * c1;
    }
    std::vector<double> next(reach.size() + 1, 0.0);
    for (size_t d = 0; d < reach.size(); ++d) {
      next[d] += reach[d] * b.below;
      next[d + 1] += reach[d] * b.tie;
    }
    reach = std::move(next);
  }
  const double alpha =
      static_cast<double>(threshold.tie_count - threshold.tie_position + 1);
  const double beta = static_cast<double>(threshold.tie_position);
  double moment = 1.0;
  double value = 0.0;
  for (size_t d = 0; d < total.size(); ++d) {
    value += total[d] * moment;
    const double t = static_cast<double>(d);
    moment *= (alpha + t) / (alpha + beta + t);
  }
  return value;
}

void check_tie(const OrderStatistic& threshold) {
  if (threshold.tie_count < 1 || threshold.tie_position < 1 ||
      threshold.tie_position > threshold.tie_count) {
    throw std::invalid_argument("OrderStatistic: bad tie position");
  }
}

}  // namespace

std::string rule_name(const ThresholdRule& rule) {
  return std::visit(
      Overloaded{[](const ExplicitThreshold&) { return std::string("explicit"); },
                 [](const OrdinalRank&) { return std::string("ordinal"); },
                 [](const MaxSample&) { return std::string("max_sample"); }},
      rule);
}

int64_t rule_rank(const ThresholdRule& rule) {
  return std::visit(
      Overloaded{[](const ExplicitThreshold&) -> int64_t { return 0; },
                 [](const OrdinalRank& r) -> int64_t { return r.rank; },
                 [](const MaxSample&) -> int64_t { return 1; }},
      rule);
}

double omega_rho() {
  double lo = 0.5;
  double hi = 0.6;
  auto residual = [](double x) { return x * std::exp(x) - 1.0; };
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
}

int64_t recommended_rank(int64_t k) {
  if (k < 1) throw std::invalid_argument("recommended_rank: k must be >= 1");
  const double kd = static_cast<double>(k);
  const double cube_root = std::cbrt(kd);
  const double raw = omega_rho() * kd - cube_root * cube_root;
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(raw)));
}

OrderStatistic select_order_statistic(const SampleSet& s,
                                      const ThresholdRule& rule) {
  if (const auto* e = std::get_if<ExplicitThreshold>(&rule)) {
    return {e->t, 1, 1};
  }
  const int64_t rank = rule_rank(rule);
  if (rank < 1 || rank > static_cast<int64_t>(s.size())) {
    throw std::out_of_range("select_threshold: rank " + std::to_string(rank) +
                            " outside [1, " + std::to_string(s.size()) + "]");
  }
  const auto& v = s.values();
  const double t = v[static_cast<size_t>(rank - 1)];
  const auto range = std::equal_range(v.begin(), v.end(), t, std::greater<>());
  const int64_t above = range.first - v.begin();
  return {t, rank - above, range.second - range.first};
}

double select_threshold(const SampleSet& s, const ThresholdRule& rule) {
  return select_order_statistic(s, rule).value;
}

double run_static_threshold(std::span<const double> values, double t) {
  for (double v : values) {
    if (v > t) return v;
  }
  return 0.0;
}

double run_static_threshold(std::span<const double> values,
                            std::span<const double> value_ranks, double t,
                            double t_rank) {
  if (values.size() != value_ranks.size()) {
    throw std::invalid_argument("run_static_threshold: rank size mismatch");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] > t || (values[i] == t && value_ranks[i] > t_rank)) {
      return values[i];
    }
  }
  return 0.0;
}

double exact_static_threshold_value(const Instance& inst, double t) {
  return exact_static_threshold_value(inst, OrderStatistic{t, 1, 1});
}

double exact_static_threshold_value(const Instance& inst,
                                    const OrderStatistic& threshold) {
  check_tie(threshold);
  const double t = threshold.value;
  std::vector<BoxAtThreshold> boxes;
  boxes.reserve(inst.size());
  for (const ValueDist& d : inst.boxes()) {
    boxes.push_back(
        {d.cdf_below(t), d.atom_mass(t), tail_expectation(d, t), t});
  }
  return integrate_tie_rank(boxes, threshold);
}

double threshold_survival(const Instance& inst,
                          const OrderStatistic& threshold, double x) {
  check_tie(threshold);
  if (x <= 0.0) return 1.0;
  const double t = threshold.value;
  std::vector<BoxAtThreshold> boxes;
  boxes.reserve(inst.size());
  for (const ValueDist& d : inst.boxes()) {
    const double above = x > t ? 1.0 - d.cdf_below(x) : 1.0 - cdf(d, t);
    boxes.push_back({d.cdf_below(t), d.atom_mass(t), std::max(above, 0.0),
                     t >= x ? 1.0 : 0.0});
  }
  return integrate_tie_rank(boxes, threshold);
}

ThresholdDiagnostics threshold_diagnostics(const Instance& inst, double t) {
  ThresholdDiagnostics diag{t, 1.0, 0.0, 0.0};
  for (const ValueDist& d : inst.boxes()) {
    const double f = cdf(d, t);
    diag.f_of_t *= f;
    diag.g += 1.0 - f;
  }
  diag.h = std::min(diag.f_of_t, 1.0 - diag.f_of_t);
  constexpr double kSlack = 1e-12;
  if (1.0 - diag.g > diag.f_of_t + kSlack ||
      diag.f_of_t > std::exp(-diag.g) + kSlack) {
    throw std::logic_error("threshold_diagnostics: 1 - g <= F <= exp(-g) "
                           "violated");
  }
  return diag;
}

}  // namespace prophet
