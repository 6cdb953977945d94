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

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace affekt::sentiment {

// Lower-cased token scores in [-4, +4], negators and intensifier multipliers.
struct Lexicon {
  std::map<std::string, double, std::less<>> entries;
  std::set<std::string, std::less<>> negators;
  std::map<std::string, double, std::less<>> intensifiers;
};

inline constexpr double kMaxTokenScore = 4.0;
inline constexpr double kNegationFactor = -0.74;
inline constexpr std::size_t kNegationWindow = 3;

// TSV: `token<TAB>score` rows, then optional `#negators` (one token per row)
// and `#intensifiers` (`token<TAB>multiplier`) sections. Blank lines and
// lines starting with "# " are comments.
Lexicon read_lexicon(std::istream& in, const std::string& name);
Lexicon load_lexicon(const std::filesystem::path& path);

class Analyzer {
 public:
  virtual ~Analyzer() = default;
  // Returns a value in [-1, +1].
  virtual double analyze(std::string_view text) const = 0;
};

// Sum of token scores with negation and intensifier adjustments, squashed by
// tanh(sum / 4). Multi-sentence text averages the per-sentence values.
class LexiconAnalyzer final : public Analyzer {
 public:
  explicit LexiconAnalyzer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}
  double analyze(std::string_view text) const override;
  const Lexicon& lexicon() const { return lexicon_; }

 private:
  double sentence_score(const std::vector<std::string>& tokens) const;
  Lexicon lexicon_;
};

// POST {"text": ...} -> {"sentiment": number}. Out-of-range responses are
// clamped with a warning. Throws BackendUnavailable on refusal, timeout or a
// non-2xx status.
double analyze_remote(const std::string& endpoint, std::string_view text,
                      std::chrono::milliseconds timeout = std::chrono::seconds(2));

class RemoteAnalyzer final : public Analyzer {
 public:
  RemoteAnalyzer(std::string endpoint, std::shared_ptr<const Analyzer> fallback,
                 std::chrono::milliseconds timeout = std::chrono::seconds(2));
  // Falls back to the local analyzer when the remote backend is unavailable.
  double analyze(std::string_view text) const override;

 private:
  std::string endpoint_;
  std::shared_ptr<const Analyzer> fallback_;
  std::chrono::milliseconds timeout_;
};

}  // namespace affekt::sentiment
