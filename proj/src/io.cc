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

#include "prophet/io.h"

#include <cstdio>
#include <fstream>
#include <vector>

#include "prophet/evaluation.h"

namespace prophet::io {
namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key, "required");
  return *it;
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int64_t>();
}

}  // namespace

Instance parse_instance(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (j.contains("generator")) {
    const json& gen = j["generator"];
    const int64_t k = as_int(require(j, "k", path), path + ".k");
    if (k < 2) throw ConfigError(path + ".k", "must be >= 2");
    if (gen == "case1") return case1_instance(k);
    if (gen == "case2") {
      int64_t n = case2_default_boxes(k);
      if (j.contains("n")) n = as_int(j["n"], path + ".n");
      if (n < 2) throw ConfigError(path + ".n", "must be >= 2");
      return case2_instance(k, n);
    }
    throw ConfigError(path + ".generator", "expected \"case1\" or \"case2\"");
  }
  const json& boxes = require(j, "boxes", path);
  if (!boxes.is_array() || boxes.empty()) {
    throw ConfigError(path + ".boxes", "expected a non-empty array");
  }
  std::vector<ValueDist> dists;
  for (size_t b = 0; b < boxes.size(); ++b) {
    const std::string bpath = path + ".boxes[" + std::to_string(b) + "]";
    const json& segs = require(boxes[b], "segments", bpath);
    if (!segs.is_array() || segs.empty()) {
      throw ConfigError(bpath + ".segments", "expected a non-empty array");
    }
    std::vector<Segment> parsed;
    for (size_t s = 0; s < segs.size(); ++s) {
      const std::string spath =
          bpath + ".segments[" + std::to_string(s) + "]";
      const json& seg = segs[s];
      if (!seg.is_array() || seg.size() != 3) {
        throw ConfigError(spath, "expected [weight, lo, hi]");
      }
      parsed.push_back({as_double(seg[0], spath), as_double(seg[1], spath),
                        as_double(seg[2], spath)});
    }
    try {
      dists.emplace_back(std::move(parsed));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(bpath, e.what());
    }
  }
  return Instance(std::move(dists));
}

ThresholdRule RuleSpec::at(int64_t k) const {
  if (recommended) return OrdinalRank{recommended_rank(k)};
  return rule;
}

RuleSpec parse_rule(const json& j, const std::string& path) {
  const json& name = require(j, "rule", path);
  RuleSpec spec;
  if (name == "max_sample") {
    spec.rule = MaxSample{};
  } else if (name == "explicit") {
    spec.rule = ExplicitThreshold{as_double(require(j, "t", path), path + ".t")};
  } else if (name == "ordinal") {
    const json& rank = require(j, "rank", path);
    if (rank == "recommended") {
      spec.recommended = true;
    } else {
      const int64_t r = as_int(rank, path + ".rank");
      if (r < 1) throw ConfigError(path + ".rank", "must be >= 1");
      spec.rule = OrdinalRank{r};
    }
  } else {
    throw ConfigError(path + ".rule",
                      "expected \"ordinal\", \"max_sample\" or \"explicit\"");
  }
  return spec;
}

hardness::QPolicy parse_policy(const json& j, int64_t k) {
  if (!j.is_object()) throw ConfigError("policy", "expected an object");
  if (j.contains("k")) {
    const int64_t file_k = as_int(j["k"], "policy.k");
    if (k > 0 && file_k != k) {
      throw ConfigError("policy.k", "differs from the requested k");
    }
    k = file_k;
  }
  if (k < 1 || k > hardness::kMaxK) {
    throw ConfigError("policy.k", "must be in [1, 10000]");
  }
  hardness::QPolicy q(k);
  if (!j.contains("entries")) return q;
  const json& entries = j["entries"];
  if (!entries.is_array()) {
    throw ConfigError("policy.entries", "expected an array");
  }
  for (size_t e = 0; e < entries.size(); ++e) {
    const std::string path = "policy.entries[" + std::to_string(e) + "]";
    const json& entry = entries[e];
    const json& prefix = require(entry, "prefix", path);
    if (!prefix.is_array()) {
      throw ConfigError(path + ".prefix", "expected an array");
    }
    std::vector<int> bits;
    for (size_t b = 0; b < prefix.size(); ++b) {
      if (b == 0 && prefix[b] == "xi") continue;
      const int64_t bit = as_int(prefix[b], path + ".prefix");
      if (bit != 0 && bit != 1) {
        throw ConfigError(path + ".prefix", "values after xi must be 0 or 1");
      }
      bits.push_back(static_cast<int>(bit));
    }
    if (bits.size() > 4) {
      throw ConfigError(path + ".prefix", "at most four values after xi");
    }
    const int index = hardness::prefix_index(bits);
    const double value = as_double(require(entry, "q", path), path + ".q");
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError(path + ".q", "must be in [0, 1]");
    }
    if (entry.contains("i")) {
      const int64_t i = as_int(entry["i"], path + ".i");
      if (i < 0 || i > 4 * k) throw ConfigError(path + ".i", "outside [0, 4k]");
      q.set(index, i, value);
    } else {
      q.set_row(index, value);
    }
  }
  return q;
}

json read_json_file(const std::string& file, const std::string& field) {
  std::ifstream in(file);
  if (!in) throw ConfigError(field, "cannot read " + file);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("invalid JSON: ") + e.what());
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace prophet::io
