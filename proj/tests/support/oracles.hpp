// Copyright 2026 The Affekt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force reference implementations. Each one follows the written rule
// directly and favors obviousness over speed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affekt/markup.hpp"

namespace oracle {

inline std::string data_dir() { return AFFEKT_DATA_DIR; }

// Tokenizer built on std::regex: punctuation to spaces, split, ASCII case.
std::vector<std::string> tokenize_upper(const std::string& text);

// Weighted state of the last 30 values of `sequence`, weights listed out
// explicitly as i / (1 + 2 + ... + k).
double emotional_state(const std::vector<int>& sequence);

// Tries every category against the input and keeps the best-ranked
// alignment. Ranks per element: literal, `_`, `*`, absent clause; shorter
// wildcard spans first; earliest category on a tie.
struct Match {
  std::size_t index = 0;
  std::vector<affekt::Tokens> captures;
};
std::optional<Match> best_match(const std::vector<affekt::markup::Category>& categories,
                                const affekt::Tokens& input, const affekt::Tokens* that,
                                const affekt::Tokens* topic);

// Exact two-sided signed-rank p-value by listing all 2^n sign vectors.
struct Signed {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};
Signed wilcoxon_enumerate(const std::vector<double>& pre, const std::vector<double>& post);

}  // namespace oracle
