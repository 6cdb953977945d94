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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affekt/perception.hpp"
#include "affekt/schedule.hpp"

namespace affekt::metrics {

struct EmotionPercentages {
  double positive = 0.0;
  double neutral = 0.0;
  double negative = 0.0;
};

// 100 * count / total per category. Throws EmptyTrace.
EmotionPercentages session_emotion_percentages(std::span<const perception::EmotionCategory> trace);
// Same, over raw class values -1/0/+1.
EmotionPercentages session_emotion_percentages(std::span<const int> class_values);

struct WordCountStats {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t turns = 0;
};

// Pooled over every turn of every session. Throws EmptyInput.
WordCountStats mean_word_count(std::span<const std::vector<std::size_t>> sessions);

struct WilcoxonResult {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  enum class Method { Exact, NormalApprox } method = Method::Exact;
  std::size_t n = 0;  // non-zero pairs used
};

inline constexpr std::size_t kExactWilcoxonLimit = 12;

// Signed-rank test on post - pre. Zero differences are dropped and tied
// magnitudes get average ranks. Exact two-sided p by enumerating all sign
// assignments for n <= 12, otherwise the tie-corrected normal approximation.
// z = (min(W+, W-) - n(n+1)/4) / sd, without continuity correction.
// Throws LengthMismatch, EmptyInput, AllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> pre, std::span<const double> post);

enum class Phq9Band { Minimal, Mild, Moderate, ModeratelySevere, Severe };
enum class GdsBand { Normal, Mild, Severe };

const char* to_string(Phq9Band band);
const char* to_string(GdsBand band);

struct Phq9Score {
  int score = 0;
  Phq9Band band = Phq9Band::Minimal;
};

struct GdsScore {
  int score = 0;
  GdsBand band = GdsBand::Normal;
};

// Nine answers in 0..3. Throws WrongArity or OutOfRange.
Phq9Score score_phq9(std::span<const int> answers);
// Thirty yes/no answers scored against a key marking the depressive answer.
// Throws WrongArity.
GdsScore score_gds(std::span<const bool> answers, std::span<const bool> key);

Phq9Band phq9_band(int score);
GdsBand gds_band(int score);

struct SessionRow {
  std::string participant_id;
  Group group = Group::G1;
  int session_number = 0;
  Mode mode = Mode::EmotionOff;
  std::vector<std::size_t> word_counts;
  std::size_t frames_positive = 0;
  std::size_t frames_neutral = 0;
  std::size_t frames_negative = 0;
  std::optional<int> face_pre;
  std::optional<int> face_post;
};

// Reads every *.jsonl session log in `dir`. Rows come back sorted by
// (participant, session number). Throws LocatedError(CorruptLog).
std::vector<SessionRow> read_session_logs(const std::filesystem::path& dir);

// RFC 4180 CSV: one row per participant-session, then one summary row per
// (group, mode) block. Column order is fixed; see kReportColumns.
std::string render_report(const std::vector<SessionRow>& rows);

inline constexpr const char* kReportColumns[] = {
    "row_type",        "participant_id",    "group",        "session_number", "mode",
    "turns",           "word_count_mean",   "word_count_std_pop", "frames",   "positive_pct",
    "neutral_pct",     "negative_pct",      "face_pre",     "face_post",      "face_delta"};

std::string export_report(const std::filesystem::path& logs_dir);

}  // namespace affekt::metrics
