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

#include "prophet/cli.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prophet/algorithms.h"
#include "prophet/evaluation.h"
#include "prophet/hardness.h"
#include "prophet/io.h"
#include "prophet/random.h"
#include "prophet/stats.h"

namespace prophet {
namespace {

using io::ConfigError;
using io::format_double;
using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int64_t> reps;
  std::optional<int> threads;
  std::string out;
  std::string policy;
  std::optional<int64_t> k;
};

class Context {
 public:
  Context(const Flags& flags, std::ostream& err) : flags_(flags), err_(err) {
    if (!flags.config.empty()) {
      config_ = io::read_json_file(flags.config, "config");
      if (!config_.is_object()) {
        throw ConfigError("config", "expected a JSON object");
      }
    }
  }

  const json& config() const { return config_; }
  std::ostream& log() { return err_; }

  bool has(const std::string& key) const { return config_.contains(key); }
  const json& at(const std::string& key) const {
    if (!has(key)) throw ConfigError(key, "required");
    return config_[key];
  }

  uint64_t seed() const {
    if (flags_.seed) return *flags_.seed;
    if (!has("seed")) {
      throw ConfigError("seed", "required for this command");
    }
    const json& s = config_["seed"];
    if (!s.is_number_unsigned()) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    return s.get<uint64_t>();
  }

  uint64_t seed_or_zero() const {
    return flags_.seed || has("seed") ? seed() : 0;
  }

  int64_t reps(int64_t minimum = 1) const {
    int64_t reps = 0;
    if (flags_.reps) {
      reps = *flags_.reps;
    } else {
      reps = integer("reps");
    }
    if (reps < minimum) {
      throw ConfigError("reps", "must be >= " + std::to_string(minimum));
    }
    return reps;
  }

  int threads() const {
    int threads = 0;
    if (flags_.threads) {
      threads = *flags_.threads;
    } else if (has("threads")) {
      threads = static_cast<int>(integer("threads"));
    }
    if (threads < 0) throw ConfigError("threads", "must be >= 0");
    return threads;
  }

  int64_t integer(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
    return v.get<int64_t>();
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = config_[key];
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = config_[key];
    if (!v.is_string()) throw ConfigError(key, "expected a string");
    return v.get<std::string>();
  }

  // An integer or a list of integers.
  std::vector<int64_t> integer_list(const std::string& key) const {
    const json& v = at(key);
    std::vector<int64_t> out;
    auto take = [&](const json& x) {
      if (!x.is_number_integer() || x.get<int64_t>() < 1) {
        throw ConfigError(key, "expected positive integers");
      }
      out.push_back(x.get<int64_t>());
    };
    if (v.is_array()) {
      for (const json& x : v) take(x);
    } else {
      take(v);
    }
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
  }

  const Flags& flags() const { return flags_; }

 private:
  const Flags& flags_;
  std::ostream& err_;
  json config_ = json::object();
};

// Library argument errors on user-supplied input are validation failures.
template <typename Fn>
auto guard(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(field, e.what());
  }
}

struct NamedInstance {
  std::string id;
  Instance instance;
};

std::vector<NamedInstance> instances(const Context& ctx) {
  const json& list = ctx.at("instances");
  if (!list.is_array() || list.empty()) {
    throw ConfigError("instances", "expected a non-empty array");
  }
  std::vector<NamedInstance> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string path = "instances[" + std::to_string(i) + "]";
    std::string id = "instance" + std::to_string(i);
    if (list[i].is_object() && list[i].contains("id")) {
      if (!list[i]["id"].is_string()) {
        throw ConfigError(path + ".id", "expected a string");
      }
      id = list[i]["id"].get<std::string>();
    }
    out.push_back({id, io::parse_instance(list[i], path)});
  }
  return out;
}

std::vector<io::RuleSpec> rules(const Context& ctx) {
  if (ctx.has("rule")) return {io::parse_rule(ctx.at("rule"), "rule")};
  const json& list = ctx.at("rules");
  if (!list.is_array() || list.empty()) {
    throw ConfigError("rules", "expected a non-empty array");
  }
  std::vector<io::RuleSpec> out;
  for (size_t i = 0; i < list.size(); ++i) {
    out.push_back(io::parse_rule(list[i], "rules[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string join(std::initializer_list<std::string> cells) {
  std::string line;
  for (const std::string& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

void check_rank(const ThresholdRule& rule, const Instance& inst, int64_t k,
                const std::string& field) {
  const int64_t rank = rule_rank(rule);
  const int64_t pool = k * static_cast<int64_t>(inst.size());
  if (rank > pool) {
    throw ConfigError(field, "rank " + std::to_string(rank) +
                                 " exceeds the " + std::to_string(pool) +
                                 " pooled samples");
  }
}

void run_eval(Context& ctx, std::ostream& out) {
  const auto insts = instances(ctx);
  const auto rule_specs = rules(ctx);
  const auto ks = ctx.integer_list("k");
  const std::string method = ctx.text("method", "mc");
  if (method != "mc" && method != "semi_exact" && method != "exact") {
    throw ConfigError("method", "expected \"mc\", \"semi_exact\" or \"exact\"");
  }
  const bool stochastic = method != "exact";
  const uint64_t seed = stochastic ? ctx.seed() : ctx.seed_or_zero();
  const int64_t reps = stochastic ? ctx.reps() : 0;
  const int threads = ctx.threads();

  out << kEvalHeader << '\n';
  for (size_t i = 0; i < insts.size(); ++i) {
    const auto& [id, inst] = insts[i];
    for (size_t r = 0; r < rule_specs.size(); ++r) {
      const std::string field = ctx.has("rule")
                                    ? std::string("rule")
                                    : "rules[" + std::to_string(r) + "]";
      for (int64_t k : ks) {
        const ThresholdRule rule = rule_specs[r].at(k);
        check_rank(rule, inst, k, field);
        ctx.log() << "eval: " << id << ' ' << rule_name(rule) << " k=" << k
                  << '\n';
        RatioReport rep;
        if (method == "mc") {
          rep = guard(field, [&] {
            return mc_ratio(inst, rule, k, reps, seed, threads);
          });
        } else if (method == "semi_exact") {
          if (std::holds_alternative<ExplicitThreshold>(rule)) {
            throw ConfigError(field, "semi_exact needs a rank-based rule");
          }
          rep = guard(field, [&] {
            return semi_exact_ordinal(inst, k, rule_rank(rule), reps, seed,
                                      threads);
          });
        } else {
          const std::string where = "instances[" + std::to_string(i) + "]";
          rep.alg_value = guard(where, [&] {
            if (const auto* e = std::get_if<ExplicitThreshold>(&rule)) {
              return exact_static_threshold_value(inst, e->t);
            }
            return exact_ordinal_value(inst, k, rule);
          });
          rep.prophet_value = prophet_expectation(inst);
          rep.ratio = rep.alg_value / rep.prophet_value;
          rep.seed = seed;
        }
        out << join({id, rule_name(rule), std::to_string(k),
                     std::to_string(rule_rank(rule)), std::to_string(rep.reps),
                     std::to_string(seed), format_double(rep.alg_value),
                     format_double(rep.prophet_value), format_double(rep.ratio),
                     format_double(rep.ci_halfwidth)});
      }
    }
  }
}

void run_dominance(Context& ctx, std::ostream& out) {
  const auto insts = instances(ctx);
  const io::RuleSpec spec =
      ctx.has("rule") ? io::parse_rule(ctx.at("rule"), "rule")
                      : io::RuleSpec{MaxSample{}, false};
  const int64_t k = ctx.has("k") ? ctx.integer("k") : 1;
  if (k < 1) throw ConfigError("k", "must be >= 1");
  const double gamma = ctx.number("gamma", 0.5);
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma", "must be in (0, 1]");
  }
  const std::string mode = ctx.text("mode", "exact");
  DominanceOptions options;
  options.threads = ctx.threads();
  if (mode == "mc") {
    options.mode = DominanceMode::kMonteCarlo;
    options.seed = ctx.seed();
    options.reps = ctx.reps();
  } else if (mode != "exact") {
    throw ConfigError("mode", "expected \"exact\" or \"mc\"");
  }
  const ThresholdRule rule = spec.at(k);

  out << kDominanceHeader << '\n';
  for (size_t i = 0; i < insts.size(); ++i) {
    const auto& [id, inst] = insts[i];
    check_rank(rule, inst, k, "rule");
    const DominanceReport rep =
        guard("instances[" + std::to_string(i) + "]", [&] {
          return dominance_check(inst, rule, k, gamma, options);
        });
    for (size_t g = 0; g < rep.grid.size(); ++g) {
      out << join({id, format_double(gamma), format_double(rep.grid[g]),
                   format_double(rep.alg_survival[g]),
                   format_double(rep.max_survival[g]),
                   format_double(rep.alg_survival[g] / rep.max_survival[g])});
    }
    ctx.log() << "dominance: " << id << " worst ratio "
              << format_double(rep.worst_ratio) << " at x="
              << format_double(rep.worst_x) << (rep.pass ? " pass" : " FAIL")
              << '\n';
  }
}

std::vector<int64_t> sweep_ranks(const Context& ctx, int64_t k) {
  const json& list = ctx.at("ranks");
  if (!list.is_array() || list.empty()) {
    throw ConfigError("ranks", "expected a non-empty array");
  }
  std::vector<int64_t> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string path = "ranks[" + std::to_string(i) + "]";
    const json& r = list[i];
    int64_t rank = 0;
    if (r == "rho") {
      rank = std::llround(omega_rho() * static_cast<double>(k));
    } else if (r == "recommended") {
      rank = recommended_rank(k);
    } else if (r.is_object() && r.contains("fraction")) {
      if (!r["fraction"].is_number()) {
        throw ConfigError(path + ".fraction", "expected a number");
      }
      rank = std::llround(r["fraction"].get<double>() * static_cast<double>(k));
    } else if (r.is_number_integer()) {
      rank = r.get<int64_t>();
    } else {
      throw ConfigError(path,
                        "expected an integer, \"rho\", \"recommended\" or "
                        "{\"fraction\": f}");
    }
    if (rank < 1 || rank > 2 * k) throw ConfigError(path, "rank out of range");
    out.push_back(rank);
  }
  return out;
}

void run_sweep(Context& ctx, std::ostream& out) {
  const int64_t k = ctx.integer("k");
  if (k < 2) throw ConfigError("k", "must be >= 2");
  const auto ranks = sweep_ranks(ctx, k);
  const uint64_t seed = ctx.seed();
  const int64_t reps = ctx.reps();
  ctx.log() << "ordinal-sweep: k=" << k << ", " << ranks.size() << " ranks\n";
  const auto rows =
      ordinal_upper_bound_sweep(k, ranks, reps, seed, ctx.threads());
  out << kSweepHeader << '\n';
  for (const SweepRow& row : rows) {
    const auto emit = [&](const char* name, int64_t boxes,
                          const RatioReport& r) {
      out << join({std::to_string(k), std::to_string(row.rank), name,
                   std::to_string(boxes), std::to_string(r.reps),
                   std::to_string(seed), format_double(r.alg_value),
                   format_double(r.prophet_value), format_double(r.ratio),
                   format_double(r.ci_halfwidth)});
    };
    emit("case1", 2, row.case1);
    emit("case2", row.case2_boxes, row.case2);
    ctx.log() << "ordinal-sweep: l=" << row.rank << " min ratio "
              << format_double(row.min_ratio) << '\n';
  }
}

json candidate_json(const hardness::Candidate& c) {
  return json{{"label", c.label}, {"p", c.p.values()}};
}

void run_hardness(Context& ctx, std::ostream& out) {
  hardness::HardParams params;
  params.xi = ctx.number("xi", params.xi);
  params.delta1 = ctx.number("delta1", params.delta1);
  params.delta2 = ctx.number("delta2", params.delta2);
  params.eps = ctx.number("eps", params.eps);
  params.c = ctx.number("c", params.c);

  int64_t k = 0;
  if (ctx.flags().k) {
    k = *ctx.flags().k;
  } else if (ctx.has("k")) {
    k = ctx.integer("k");
  }
  json policy;
  if (!ctx.flags().policy.empty()) {
    policy = io::read_json_file(ctx.flags().policy, "policy");
  } else if (ctx.has("policy") && ctx.at("policy").is_string()) {
    policy = io::read_json_file(ctx.at("policy").get<std::string>(), "policy");
  } else if (ctx.has("policy")) {
    policy = ctx.at("policy");
  } else {
    throw ConfigError("policy", "required");
  }
  const hardness::QPolicy q = io::parse_policy(policy, k);
  params.k = q.k();
  guard("params", [&] {
    params.validate();
    return 0;
  });

  ctx.log() << "hardness-verify: k=" << params.k << '\n';
  const hardness::AdversaryResult r = hardness::adversary(q, params);
  const hardness::CertificateTerms terms = hardness::certificate_terms(params);
  json doc{
      {"k", params.k},
      {"params",
       {{"xi", params.xi},
        {"delta1", params.delta1},
        {"delta2", params.delta2},
        {"eps", params.eps},
        {"c", params.c}}},
      {"instance", candidate_json(r.instance)},
      {"alg_value", r.alg_value},
      {"prophet_value", r.prophet_value},
      {"ratio", r.ratio},
      {"branch", hardness::branch_name(r.branch)},
      {"branch_instance", candidate_json(r.branch_instance)},
      {"branch_ratio", r.branch_ratio},
      {"branch_bound", std::isnan(r.branch_bound) ? json(nullptr)
                                                  : json(r.branch_bound)},
      {"max_over_selection", r.max_over_selection},
      {"max_q_t1", r.max_q_t1},
      {"certificate",
       {{"select_xi", terms.select_xi},
        {"spike", terms.spike},
        {"mixture", terms.mixture},
        {"value", terms.value}}},
  };
  out << doc.dump(2) << '\n';
}

std::vector<double> number_list(const json& v, const std::string& key,
                                std::vector<double> fallback) {
  if (v.is_null()) return fallback;
  if (!v.is_array() || v.empty()) {
    throw ConfigError(key, "expected a non-empty array");
  }
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(key, "expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void run_tv(Context& ctx, std::ostream& out) {
  const json binomial =
      ctx.has("binomial") ? ctx.at("binomial") : json::object();
  const json mixture = ctx.has("mixture") ? ctx.at("mixture") : json::object();
  if (!binomial.is_object()) throw ConfigError("binomial", "expected an object");
  if (!mixture.is_object()) throw ConfigError("mixture", "expected an object");
  auto field = [](const json& obj, const char* key) {
    return obj.contains(key) ? obj[key] : json();
  };
  const auto ns =
      number_list(field(binomial, "n"), "binomial.n", {100, 1000, 10000});
  const auto ps =
      number_list(field(binomial, "p"), "binomial.p", {0.1, 0.3, 0.5});
  const auto ks =
      number_list(field(mixture, "k"), "mixture.k", {200, 800, 3200});
  const auto eps = number_list(field(mixture, "eps"), "mixture.eps", {0.1});
  hardness::MixtureVariant variant = hardness::MixtureVariant::kMeanConsistent;
  if (mixture.contains("variant")) {
    if (mixture["variant"] == "additive_eps") {
      variant = hardness::MixtureVariant::kAdditiveEps;
    } else if (mixture["variant"] != "mean_consistent") {
      throw ConfigError("mixture.variant",
                        "expected \"mean_consistent\" or \"additive_eps\"");
    }
  }

  out << kTvHeader << '\n';
  for (double p : ps) {
    for (double n : ns) {
      if (n < 1 || n != std::floor(n)) {
        throw ConfigError("binomial.n", "expected positive integers");
      }
      const double tv = guard("binomial.p", [&] {
        return tv_binom_vs_normal(static_cast<int64_t>(n), p);
      });
      out << join({"binomial_vs_normal", std::to_string(static_cast<int64_t>(n)),
                   format_double(p), format_double(tv)});
    }
  }
  for (double e : eps) {
    for (double kd : ks) {
      if (kd < 1 || kd > hardness::kMaxK || kd != std::floor(kd)) {
        throw ConfigError("mixture.k", "expected integers in [1, 10000]");
      }
      hardness::HardParams params;
      params.eps = e;
      params.k = static_cast<int64_t>(kd);
      guard("mixture.eps", [&] {
        params.validate();
        return 0;
      });
      ctx.log() << "tv-convergence: mixture k=" << params.k << '\n';
      const auto spec = hardness::build_dd_mixture(params, variant);
      out << join({"mixture", std::to_string(params.k), format_double(e),
                   format_double(tv_distance(spec.mixture, spec.target))});
    }
  }
}

void run_stats(Context& ctx, std::ostream& out) {
  const int64_t n = ctx.has("n") ? ctx.integer("n") : 1000;
  if (n < 1) throw ConfigError("n", "must be >= 1");
  const double p = ctx.number("p", 0.5);
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "must be in [0, 1]");
  const auto deltas = number_list(
      ctx.has("deltas") ? ctx.at("deltas") : json(), "deltas", {0.1, 0.2, 0.3});
  const uint64_t seed = ctx.seed();
  const int64_t reps = ctx.reps(10'000);
  const std::vector<double> probs(static_cast<size_t>(n), p);

  out << kChernoffHeader << '\n';
  for (size_t d = 0; d < deltas.size(); ++d) {
    CounterRng rng = replication_rng(seed, d, Substream::kAux);
    const ChernoffReport r = guard("deltas", [&] {
      return chernoff_check(probs, deltas[d], reps, rng);
    });
    ctx.log() << "stats-check: delta=" << format_double(deltas[d])
              << (r.pass ? " pass" : " FAIL") << '\n';
    out << join({std::to_string(n), format_double(p), format_double(r.delta),
                 format_double(r.mu), std::to_string(r.reps),
                 std::to_string(seed), format_double(r.empirical),
                 format_double(r.bound), format_double(r.std_error),
                 r.pass ? "1" : "0"});
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sample-based prophet inequality experiments",
               "prophet_samples"};
  app.require_subcommand(1);
  Flags flags;

  using Runner = std::function<void(Context&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Runner>> commands;
  auto add = [&](const char* name, const char* about, Runner run) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--seed", flags.seed, "Base seed");
    sub->add_option("--reps", flags.reps, "Replications");
    sub->add_option("--threads", flags.threads, "Worker threads (0 = all)");
    sub->add_option("--out", flags.out, "Output file (default stdout)");
    commands.emplace_back(sub, std::move(run));
    return sub;
  };
  add("eval", "Algorithm value against the prophet", run_eval);
  add("dominance", "Stochastic dominance check", run_dominance);
  add("ordinal-sweep", "Ordinal rank sweep on the two hard instances",
      run_sweep);
  CLI::App* verify = add("hardness-verify",
                         "Adversarial instance for a q-policy", run_hardness);
  verify->add_option("--policy", flags.policy, "q-policy JSON file");
  verify->add_option("--k", flags.k, "Samples per box");
  add("tv-convergence", "Total variation convergence series", run_tv);
  add("stats-check", "Chernoff tail check", run_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    for (auto& [sub, run] : commands) {
      if (!sub->parsed()) continue;
      Context ctx(flags, err);
      std::ostringstream buffer;
      run(ctx, buffer);
      if (flags.out.empty()) {
        out << buffer.str();
      } else {
        std::ofstream file(flags.out, std::ios::binary);
        if (!file) throw ConfigError("out", "cannot write " + flags.out);
        file << buffer.str();
        if (!file) throw ConfigError("out", "write failed for " + flags.out);
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace prophet
