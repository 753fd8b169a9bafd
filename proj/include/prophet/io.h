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

// JSON readers for instances, rules and q-policies.

#ifndef PROPHET_IO_H_
#define PROPHET_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "prophet/algorithms.h"
#include "prophet/distributions.h"
#include "prophet/hardness.h"

namespace prophet::io {

// Invalid input; field() names the offending JSON path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// {"boxes": [{"segments": [[weight, lo, hi], ...]}, ...]}. A segment with
// lo == hi is an atom. Alternatively {"generator": "case1", "k": K} or
// {"generator": "case2", "k": K, "n": N}.
Instance parse_instance(const nlohmann::json& j, const std::string& path);

// {"rule": "ordinal", "rank": R | "recommended"}, {"rule": "max_sample"} or
// {"rule": "explicit", "t": T}.
struct RuleSpec {
  ThresholdRule rule = MaxSample{};
  bool recommended = false;

  // The rule with "recommended" resolved for k samples per box.
  ThresholdRule at(int64_t k) const;
};
RuleSpec parse_rule(const nlohmann::json& j, const std::string& path);

// {"k": K, "entries": [{"prefix": [...], "i": I, "q": Q}, ...]}. A prefix
// lists the observed values after xi (each 0 or 1) and may start with the
// string "xi". Entries without "i" apply to every ones-count. Missing
// entries are 0. When the file has no "k", `k` is used; a file k that
// differs from a positive `k` is an error.
hardness::QPolicy parse_policy(const nlohmann::json& j, int64_t k);

// Reads and parses a JSON file; errors name `field`.
nlohmann::json read_json_file(const std::string& file, const std::string& field);

// %.17g.
std::string format_double(double x);

}  // namespace prophet::io

#endif  // PROPHET_IO_H_
