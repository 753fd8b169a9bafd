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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "prophet/algorithms.h"
#include "prophet/cli.h"
#include "prophet/evaluation.h"
#include "prophet/hardness.h"
#include "prophet/random.h"
#include "prophet/stats.h"

#ifndef PROPHET_SOURCE_DIR
#define PROPHET_SOURCE_DIR "."
#endif

namespace prophet {
namespace {

namespace hd = hardness;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

Instance instance_a() {
  const double v[] = {0.0, 2.0};
  const double p[] = {0.5, 0.5};
  return Instance({ValueDist::atom(1.0), ValueDist::discrete(v, p)});
}

Outcome omega() {
  const auto start = std::chrono::steady_clock::now();
  const double rho = omega_rho();
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  const double residual = std::abs(rho * std::exp(rho) - 1.0);
  const bool ok = residual <= 1e-12 && rho > 0.567143 && rho < 0.567144 &&
                  ms < 1.0;
  return {ok, fmt("rho=%.15f residual=%.2e solve=%.3fms", rho, residual, ms)};
}

Outcome certificate_arithmetic() {
  const hd::CertificateTerms t = hd::certificate_terms(hd::HardParams{});
  const bool value_ok = std::abs(t.value - 0.4997) <= 1e-12;
  const bool first = std::abs(t.select_xi - 0.4997) <= 1e-12;
  const bool second = std::abs(t.spike - 0.4995) <= 1e-12;
  // The stated third term is 0.484526...; compared to six places.
  const bool third = std::abs(t.mixture - 0.484526) < 5e-7;
  return {value_ok && first && second && third,
          fmt("certificate=%.15f terms=(%.15f, %.15f, %.15f); expected third "
              "term 0.484526...",
              t.value, t.select_xi, t.spike, t.mixture)};
}

Outcome dominance_suite() {
  CounterRng rng(2026, 3);
  double worst = 1.0;
  int failures = 0;
  for (int i = 0; i < 25; ++i) {
    const Instance inst = random_discrete_instance(rng, 5, 4);
    const DominanceReport r = dominance_check(inst, MaxSample{}, 1, 0.5);
    worst = std::min(worst, r.worst_ratio);
    if (!r.pass) ++failures;
  }
  const DominanceReport a = dominance_check(instance_a(), MaxSample{}, 1, 0.5);
  const bool a_exact = a.pass && std::abs(a.worst_ratio - 0.5) <= 1e-12;
  return {failures == 0 && a_exact,
          fmt("25 random instances: %d failures, worst ratio %.6f; instance A "
              "worst %.15f",
              failures, worst, a.worst_ratio)};
}

Outcome lower_bound_trend() {
  const double floor = 1.0 - omega_rho() - 0.03;
  double worst = 1.0;
  std::string where;
  double case2_at_1e4 = 0.0;
  std::string notes;
  for (int64_t k : {1000, 10'000}) {
    const int64_t rank = recommended_rank(k);
    const int64_t n = case2_default_boxes(k);
    const RatioReport c2 =
        semi_exact_ordinal(case2_instance(k, n), k, rank, 10'000, 4000 + k);
    notes += fmt("case2(k=%lld,n=%lld)=%.4f ", static_cast<long long>(k),
                 static_cast<long long>(n), c2.ratio);
    if (c2.ratio < worst) {
      worst = c2.ratio;
      where = fmt("case2 k=%lld", static_cast<long long>(k));
    }
    if (k == 10'000) case2_at_1e4 = c2.ratio;
    CounterRng rng(4001, 0);
    for (int i = 0; i < 10; ++i) {
      const Instance inst = random_mixture_instance(rng, 5);
      const RatioReport r =
          semi_exact_ordinal(inst, k, rank, 10'000, 4100 + 10 * i + k);
      if (r.ratio < worst) {
        worst = r.ratio;
        where = fmt("mixture %d k=%lld", i, static_cast<long long>(k));
      }
    }
  }
  const bool ok =
      worst >= floor && case2_at_1e4 >= 0.40 && case2_at_1e4 <= 0.46;
  return {ok, fmt("%smin ratio %.4f (%s) vs floor %.4f", notes.c_str(), worst,
                  where.c_str(), floor)};
}

Outcome upper_bound_sweep() {
  const int64_t k = 10'000;
  const double rho = omega_rho();
  const std::vector<int64_t> ranks = {
      1, std::llround(0.4 * k), std::llround(rho * k), std::llround(0.7 * k),
      k};
  const double ceiling = 1.0 - rho + 0.03;
  bool ok = true;
  std::string detail;
  for (const SweepRow& row : ordinal_upper_bound_sweep(k, ranks, 10'000, 5)) {
    ok = ok && row.min_ratio <= ceiling;
    detail += fmt("l=%lld:%.4f ", static_cast<long long>(row.rank),
                  row.min_ratio);
  }
  return {ok, detail + fmt("ceiling %.4f", ceiling)};
}

Outcome sandwich() {
  CounterRng rng(6006, 0);
  int violations = 0;
  for (int i = 0; i < 10'000; ++i) {
    const Instance inst = i % 2 ? random_discrete_instance(rng, 5, 4)
                                : random_mixture_instance(rng, 5);
    const double t = 13.0 * rng.uniform() - 0.5;
    const ThresholdDiagnostics d = threshold_diagnostics(inst, t);
    if (1.0 - d.g > d.f_of_t + 1e-12 || d.f_of_t > std::exp(-d.g) + 1e-12) {
      ++violations;
    }
  }
  return {violations == 0, fmt("10000 probes, %d violations", violations)};
}

hd::ProbVector random_member(CounterRng& rng, const hd::HardParams& params) {
  const double levels[] = {0.0, 1.0 / 3.0, 1.0};
  std::array<double, hd::kBoxes> p{};
  p[0] = 1.0;
  for (size_t i = 1; i <= 3; ++i) {
    p[i] = levels[static_cast<int>(rng.uniform() * 3)];
  }
  p[4] = 2.0 * params.eps * rng.uniform();
  p[5] = rng.uniform() < 0.5 ? 0.0 : params.spike_probability();
  return hd::ProbVector(p, params);
}

Outcome evaluator_equivalence() {
  CounterRng rng(7007, 0);
  double gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    hd::HardParams params;
    params.k = 1 + i % 2;
    const hd::ProbVector p = random_member(rng, params);
    const hd::QPolicy q = hd::QPolicy::random(params.k, rng);
    gap = std::max(gap, std::abs(hd::eval_q_policy(p, params, q) -
                                 hd::brute_force_eval(p, params, q)));
  }
  return {gap <= 1e-10, fmt("100 probes, max gap %.3e", gap)};
}

Outcome adversary_envelope() {
  hd::HardParams params;
  params.k = 400;
  const hd::Adversary adv(params);
  CounterRng rng(8008, 0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    worst = std::max(worst, adv.evaluate(hd::QPolicy::random(400, rng)).ratio);
  }
  const double zero = adv.evaluate(hd::QPolicy(400)).ratio;
  hd::QPolicy take(400);
  take.set_row(hd::t1_index(), 1.0);
  const double xi = adv.evaluate(take).ratio;
  return {worst <= 0.51 && zero <= 0.01 && xi <= 0.01,
          fmt("50 random policies: max ratio %.6f; q=0: %.6f; q(t1)=1: %.6f",
              worst, zero, xi)};
}

Outcome mixture_convergence() {
  double prev = 2.0;
  bool decreasing = true;
  std::string detail;
  for (int64_t k : {200, 800, 3200}) {
    hd::HardParams params;
    params.eps = 0.1;
    params.k = k;
    const hd::MixtureSpec m = hd::build_dd_mixture(params);
    const double tv = tv_distance(m.mixture, m.target);
    decreasing = decreasing && tv < prev;
    prev = tv;
    detail += fmt("k=%lld:%.6f ", static_cast<long long>(k), tv);
  }
  return {decreasing && prev < 0.2, detail};
}

CountDist random_count_dist(CounterRng& rng, int64_t size) {
  std::vector<double> w(static_cast<size_t>(size));
  double total = 0.0;
  for (double& x : w) {
    x = rng.uniform();
    total += x;
  }
  for (double& x : w) x /= total;
  return CountDist(0, std::move(w));
}

Outcome tv_inequalities() {
  CounterRng rng(1010, 0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const int64_t m = 1 + static_cast<int64_t>(rng.uniform() * 40);
    std::vector<double> q(static_cast<size_t>(m));
    for (double& x : q) x = rng.uniform();
    auto expect = [&](const CountDist& d) {
      return d.expect([&](int64_t j) { return q[static_cast<size_t>(j)]; });
    };
    const CountDist d1 = random_count_dist(rng, m);
    const CountDist d2 = random_count_dist(rng, m);
    const int parts = 2 + i % 4;
    std::vector<double> coeff(static_cast<size_t>(parts));
    std::vector<CountDist> comps;
    double total = 0.0;
    for (double& c : coeff) {
      c = rng.uniform();
      total += c;
    }
    for (double& c : coeff) c /= total;
    for (int j = 0; j < parts; ++j) comps.push_back(random_count_dist(rng, m));
    const CountDist mix = mixture(coeff, comps);
    if (expect(d1) > expect(d2) + tv_distance(d1, d2) + 1e-14) ++violations;
    if (expect(d2) > expect(d1) + tv_distance(d1, d2) + 1e-14) ++violations;
    if (std::abs(expect(d1) - expect(mix)) > tv_distance(d1, mix) + 1e-14) {
      ++violations;
    }
  }
  return {violations == 0, fmt("1000 probes, %d violations", violations)};
}

Outcome binomial_normal_trend() {
  bool ok = true;
  std::string detail;
  for (double p : {0.1, 0.3, 0.5}) {
    double prev = 2.0;
    for (int64_t n : {100, 1000, 10'000}) {
      const double tv = tv_binom_vs_normal(n, p);
      ok = ok && tv < prev;
      prev = tv;
    }
    ok = ok && prev < 0.05;
    detail += fmt("p=%.1f final %.6f ", p, prev);
  }
  return {ok, detail};
}

Outcome chernoff() {
  const std::vector<double> probs(1000, 0.5);
  bool ok = true;
  std::string detail;
  for (int d = 0; d < 3; ++d) {
    const double delta = 0.1 * (d + 1);
    CounterRng rng = replication_rng(1212, static_cast<uint64_t>(d),
                                     Substream::kAux);
    const ChernoffReport r = chernoff_check(probs, delta, 100'000, rng);
    const bool within = r.empirical <= r.bound + 3.0 * r.std_error;
    ok = ok && within;
    detail += fmt("delta=%.1f empirical %.5f bound %.5f ", delta, r.empirical,
                  r.bound);
  }
  return {ok, detail};
}

Outcome determinism() {
  const std::string config =
      std::string(PROPHET_SOURCE_DIR) + "/configs/eval_instance_a.json";
  auto run = [&](const char* threads) {
    const char* argv[] = {"prophet_samples", "eval",      "--config",
                          config.c_str(),    "--threads", threads};
    std::ostringstream out, err;
    const int status = run_cli(6, argv, out, err);
    return std::make_pair(status, out.str());
  };
  const auto a = run("1");
  const auto b = run("8");
  const auto c = run("1");
  const bool ok = a.first == 0 && b.first == 0 && c.first == 0 &&
                  a.second == b.second && a.second == c.second &&
                  !a.second.empty();
  return {ok, fmt("exit codes %d/%d/%d, %zu bytes, identical=%s", a.first,
                  b.first, c.first, a.second.size(),
                  a.second == b.second && a.second == c.second ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace prophet

int main() {
  using namespace prophet;
  const std::vector<Criterion> criteria = {
      {1, "omega_rho solver", 1.0, omega},
      {2, "certificate arithmetic", 1.0, certificate_arithmetic},
      {3, "max-sample half dominance", 10.0, dominance_suite},
      {4, "ordinal lower bound trend", 120.0, lower_bound_trend},
      {5, "ordinal upper bound sweep", 180.0, upper_bound_sweep},
      {6, "threshold sandwich", 5.0, sandwich},
      {7, "hardness evaluator equivalence", 30.0, evaluator_equivalence},
      {8, "hardness adversary", 120.0, adversary_envelope},
      {9, "mixture tv convergence", 60.0, mixture_convergence},
      {10, "tv expectation inequalities", 10.0, tv_inequalities},
      {11, "binomial-normal tv trend", 30.0, binomial_normal_trend},
      {12, "chernoff tail", 30.0, chernoff},
      {13, "cli determinism", 60.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool pass = o.pass && secs <= c.budget_seconds;
    if (!pass) ++failed;
    std::printf("%s %2d %s: %s [%.2fs of %.0fs]\n", pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
