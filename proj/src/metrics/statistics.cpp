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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "affekt/error.hpp"
#include "affekt/metrics.hpp"

namespace affekt::metrics {

EmotionPercentages session_emotion_percentages(std::span<const perception::EmotionCategory> trace) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "no frames in trace");
  std::size_t pos = 0, neu = 0, neg = 0;
  for (auto c : trace) {
    switch (c) {
      case perception::EmotionCategory::Positive: ++pos; break;
      case perception::EmotionCategory::Neutral: ++neu; break;
      case perception::EmotionCategory::Negative: ++neg; break;
    }
  }
  const double total = static_cast<double>(trace.size());
  return {100.0 * static_cast<double>(pos) / total, 100.0 * static_cast<double>(neu) / total,
          100.0 * static_cast<double>(neg) / total};
}

EmotionPercentages session_emotion_percentages(std::span<const int> class_values) {
  std::vector<perception::EmotionCategory> trace;
  trace.reserve(class_values.size());
  for (int v : class_values) {
    if (v < -1 || v > 1) throw Error(ErrorCode::OutOfRange, "class value must be -1, 0 or +1");
    trace.push_back(static_cast<perception::EmotionCategory>(v));
  }
  return session_emotion_percentages(trace);
}

WordCountStats mean_word_count(std::span<const std::vector<std::size_t>> sessions) {
  WordCountStats stats;
  double sum = 0.0;
  for (const auto& s : sessions) {
    for (std::size_t c : s) sum += static_cast<double>(c);
    stats.turns += s.size();
  }
  if (stats.turns == 0) throw Error(ErrorCode::EmptyInput, "no turns to average");
  const double n = static_cast<double>(stats.turns);
  stats.mean = sum / n;
  double squares = 0.0;
  for (const auto& s : sessions) {
    for (std::size_t c : s) {
      double d = static_cast<double>(c) - stats.mean;
      squares += d * d;
    }
  }
  stats.std = std::sqrt(squares / n);
  return stats;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> pre, std::span<const double> post) {
  if (pre.size() != post.size()) {
    throw Error(ErrorCode::LengthMismatch, "pre has " + std::to_string(pre.size()) + " values, post has " +
                                               std::to_string(post.size()));
  }
  if (pre.empty()) throw Error(ErrorCode::EmptyInput, "no pairs");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    double d = post[i] - pre[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n == 0) throw Error(ErrorCode::AllZeroDifferences, "every difference is zero");

  // Average ranks of |d|.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });
  std::vector<double> ranks(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  WilcoxonResult r;
  r.n = n;
  for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];

  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
  r.z = (std::min(r.w_plus, r.w_minus) - mean) / std::sqrt(var);

  if (n <= kExactWilcoxonLimit) {
    // Ranks are multiples of 0.5, so the sums below are exact in double.
    const std::size_t total = std::size_t{1} << n;
    std::size_t at_most = 0, at_least = 0;
    for (std::size_t mask = 0; mask < total; ++mask) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) w += ranks[i];
      }
      if (w <= r.w_plus) ++at_most;
      if (w >= r.w_plus) ++at_least;
    }
    const double tail = static_cast<double>(std::min(at_most, at_least)) / static_cast<double>(total);
    r.p_two_sided = std::min(1.0, 2.0 * tail);
    r.method = WilcoxonResult::Method::Exact;
  } else {
    r.p_two_sided = std::min(1.0, std::erfc(std::abs(r.z) / std::sqrt(2.0)));
    r.method = WilcoxonResult::Method::NormalApprox;
  }
  return r;
}

const char* to_string(Phq9Band band) {
  switch (band) {
    case Phq9Band::Minimal: return "minimal";
    case Phq9Band::Mild: return "mild";
    case Phq9Band::Moderate: return "moderate";
    case Phq9Band::ModeratelySevere: return "moderately_severe";
    case Phq9Band::Severe: return "severe";
  }
  return "minimal";
}

const char* to_string(GdsBand band) {
  switch (band) {
    case GdsBand::Normal: return "normal";
    case GdsBand::Mild: return "mild";
    case GdsBand::Severe: return "severe";
  }
  return "normal";
}

Phq9Band phq9_band(int score) {
  if (score < 0 || score > 27) throw Error(ErrorCode::OutOfRange, "PHQ-9 score outside 0..27");
  if (score <= 4) return Phq9Band::Minimal;
  if (score <= 9) return Phq9Band::Mild;
  if (score <= 14) return Phq9Band::Moderate;
  if (score <= 19) return Phq9Band::ModeratelySevere;
  return Phq9Band::Severe;
}

GdsBand gds_band(int score) {
  if (score < 0 || score > 30) throw Error(ErrorCode::OutOfRange, "GDS score outside 0..30");
  if (score <= 9) return GdsBand::Normal;
  if (score <= 19) return GdsBand::Mild;
  return GdsBand::Severe;
}

Phq9Score score_phq9(std::span<const int> answers) {
  if (answers.size() != 9) {
    throw Error(ErrorCode::WrongArity, "PHQ-9 takes 9 answers, got " + std::to_string(answers.size()));
  }
  int sum = 0;
  for (int a : answers) {
    if (a < 0 || a > 3) throw Error(ErrorCode::OutOfRange, "PHQ-9 answers are 0..3");
    sum += a;
  }
  return {sum, phq9_band(sum)};
}

GdsScore score_gds(std::span<const bool> answers, std::span<const bool> key) {
  if (answers.size() != 30 || key.size() != 30) {
    throw Error(ErrorCode::WrongArity, "GDS takes 30 answers and a 30-item key");
  }
  int sum = 0;
  for (std::size_t i = 0; i < 30; ++i) sum += answers[i] == key[i] ? 1 : 0;
  return {sum, gds_band(sum)};
}

}  // namespace affekt::metrics
