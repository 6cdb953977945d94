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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>
#include <utility>

namespace oracle {

using affekt::Tokens;
using affekt::markup::Category;

std::vector<std::string> tokenize_upper(const std::string& text) {
  static const std::regex punctuation(R"([.,!?;:"()])");
  std::string spaced = std::regex_replace(text, punctuation, " ");
  std::istringstream in(spaced);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) {
    for (char& c : word) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
    }
    out.push_back(word);
  }
  return out;
}

double emotional_state(const std::vector<int>& sequence) {
  std::vector<int> window(sequence.size() > 30 ? sequence.end() - 30 : sequence.begin(), sequence.end());
  if (window.empty()) return 0.0;
  const double k = static_cast<double>(window.size());
  std::vector<double> weights;
  for (std::size_t i = 1; i <= window.size(); ++i) weights.push_back(static_cast<double>(i) / (k * (k + 1) / 2));
  double state = 0.0;
  for (std::size_t i = 0; i < window.size(); ++i) state += weights[i] * window[i];
  return state;
}

namespace {

using Step = std::pair<int, std::size_t>;  // (rank, tokens consumed)
using Signature = std::vector<Step>;

struct Alignment {
  Signature signature;
  std::vector<Tokens> captures;
};

// Every way `pattern` can consume exactly `input`.
void align(const Tokens& pattern, std::size_t pi, const Tokens& input, std::size_t ii, Alignment current,
           std::vector<Alignment>& out) {
  if (pi == pattern.size()) {
    if (ii == input.size()) out.push_back(std::move(current));
    return;
  }
  const std::string& p = pattern[pi];
  if (p == "*" || p == "_") {
    for (std::size_t len = 1; ii + len <= input.size(); ++len) {
      Alignment next = current;
      next.signature.push_back({p == "_" ? 1 : 2, len});
      next.captures.emplace_back(input.begin() + static_cast<long>(ii), input.begin() + static_cast<long>(ii + len));
      align(pattern, pi + 1, input, ii + len, std::move(next), out);
    }
    return;
  }
  if (ii < input.size() && input[ii] == p) {
    current.signature.push_back({0, 1});
    align(pattern, pi + 1, input, ii + 1, std::move(current), out);
  }
}

std::vector<Alignment> align_clause(const std::optional<Tokens>& clause, const Tokens& context) {
  std::vector<Alignment> out;
  if (!clause) {
    out.push_back({{{3, context.size()}}, {}});
    return out;
  }
  align(*clause, 0, context, 0, {}, out);
  return out;
}

}  // namespace

std::optional<Match> best_match(const std::vector<Category>& categories, const Tokens& input, const Tokens* that,
                                const Tokens* topic) {
  const Tokens no_tokens;
  std::optional<Signature> best_signature;
  std::optional<Match> best;
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const Category& cat = categories[c];
    std::vector<Alignment> pattern_ways;
    align(cat.pattern, 0, input, 0, {}, pattern_ways);
    auto that_ways = align_clause(cat.that, that ? *that : no_tokens);
    auto topic_ways = align_clause(cat.topic, topic ? *topic : no_tokens);
    for (const auto& p : pattern_ways) {
      for (const auto& t : that_ways) {
        for (const auto& o : topic_ways) {
          Signature sig = p.signature;
          sig.push_back({0, 1});
          sig.insert(sig.end(), t.signature.begin(), t.signature.end());
          sig.push_back({0, 1});
          sig.insert(sig.end(), o.signature.begin(), o.signature.end());
          // Strictly better only, so the earliest category keeps a tie.
          if (!best_signature || sig < *best_signature) {
            best_signature = sig;
            best = Match{c, p.captures};
          }
        }
      }
    }
  }
  return best;
}

Signed wilcoxon_enumerate(const std::vector<double>& pre, const std::vector<double>& post) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (post[i] - pre[i] != 0.0) diffs.push_back(post[i] - pre[i]);
  }
  const std::size_t n = diffs.size();
  // Midrank of |d_i|: one plus the number strictly smaller, plus half the
  // other equal values.
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    double smaller = 0.0;
    double equal = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(diffs[j]) < std::abs(diffs[i])) smaller += 1.0;
      if (j != i && std::abs(diffs[j]) == std::abs(diffs[i])) equal += 1.0;
    }
    ranks[i] = smaller + 1.0 + equal / 2.0;
  }
  Signed out;
  out.n = n;
  for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0 ? out.w_plus : out.w_minus) += ranks[i];

  std::uint64_t at_most = 0;
  std::uint64_t at_least = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) w += ranks[i];
    }
    if (w <= out.w_plus + 1e-9) ++at_most;
    if (w >= out.w_plus - 1e-9) ++at_least;
  }
  double tail = static_cast<double>(std::min(at_most, at_least)) / static_cast<double>(total);
  out.p = std::min(1.0, 2.0 * tail);
  return out;
}

}  // namespace oracle
