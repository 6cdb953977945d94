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

// Facial valence tracking. Each frame arrives as a probability triple from an
// external expression recognizer; the tracker keeps the class values of the
// last 30 detected frames and reports their recency-weighted average.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace affekt::perception {

struct ValenceFrame {
  std::int64_t t_ms = 0;
  double p_neg = 0.0;
  double p_neu = 1.0;
  double p_pos = 0.0;
};

enum class EmotionCategory { Negative = -1, Neutral = 0, Positive = 1 };

const char* to_string(EmotionCategory category);  // "negative" / "neutral" / "positive"
EmotionCategory category_from_string(std::string_view name);

inline constexpr double kProbabilityTolerance = 1e-6;
inline constexpr double kNeutralBand = 0.1;

// Throws InvalidFrame when a probability is outside [0,1] or the triple does
// not sum to one.
void validate(const ValenceFrame& frame);

// Argmax mapped to -1/0/+1. Ties resolve toward 0.
int classify_frame(const ValenceFrame& frame);

// Negative [-1,-0.1), Neutral [-0.1,+0.1], Positive (+0.1,+1].
// Throws OutOfRange outside [-1,+1].
EmotionCategory categorize(double value);

class ValenceTracker {
 public:
  static constexpr std::size_t kCapacity = 30;

  // v must be -1, 0 or +1.
  void push(int v);
  void clear() { size_ = 0; head_ = 0; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Oldest first.
  std::vector<int> values() const;

  // sum_i w_i v_i with w_i = i / (1 + 2 + ... + k) over the k frames present,
  // i = 1 for the oldest. Zero when empty.
  double emotional_state() const;

 private:
  std::array<int, kCapacity> ring_{};
  std::size_t head_ = 0;  // index of the oldest value
  std::size_t size_ = 0;
};

// JSON Lines trace: {"t_ms": int, "p_neg": float, "p_neu": float, "p_pos": float}.
// Throws LocatedError(ParseError) on malformed lines or non-ascending t_ms and
// InvalidFrame on bad probabilities.
std::vector<ValenceFrame> read_trace(std::istream& in, const std::string& name);
std::vector<ValenceFrame> load_trace(const std::filesystem::path& path);

}  // namespace affekt::perception
