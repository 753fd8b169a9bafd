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

// Command-line experiment runner. Each subcommand reads an optional JSON
// config; --seed, --reps, --threads and --out override it. Results go to
// stdout (or --out) and progress to stderr.
//
// Exit status: 0 on success, 2 on invalid input, 1 on internal errors.

#ifndef PROPHET_CLI_H_
#define PROPHET_CLI_H_

#include <ostream>

namespace prophet {

// Fixed CSV headers.
inline constexpr char kEvalHeader[] =
    "instance_id,rule,k,l,reps,seed,alg_value,prophet_value,ratio,ci";
inline constexpr char kDominanceHeader[] =
    "instance_id,gamma,x,alg_survival,max_survival,ratio";
inline constexpr char kSweepHeader[] =
    "k,l,instance,boxes,reps,seed,alg_value,prophet_value,ratio,ci";
inline constexpr char kTvHeader[] = "series,size,param,tv";
inline constexpr char kChernoffHeader[] =
    "n,p,delta,mu,reps,seed,empirical,bound,std_error,pass";

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace prophet

#endif  // PROPHET_CLI_H_
