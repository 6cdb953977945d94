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

#include "affekt/perception.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>

#include "affekt/error.hpp"

namespace affekt::perception {

const char* to_string(EmotionCategory category) {
  switch (category) {
    case EmotionCategory::Negative: return "negative";
    case EmotionCategory::Neutral: return "neutral";
    case EmotionCategory::Positive: return "positive";
  }
  return "neutral";
}

EmotionCategory category_from_string(std::string_view name) {
  if (name == "negative") return EmotionCategory::Negative;
  if (name == "neutral") return EmotionCategory::Neutral;
  if (name == "positive") return EmotionCategory::Positive;
  throw Error(ErrorCode::OutOfRange, "unknown emotion category '" + std::string(name) + "'");
}

void validate(const ValenceFrame& frame) {
  for (double p : {frame.p_neg, frame.p_neu, frame.p_pos}) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw Error(ErrorCode::InvalidFrame, "frame at t_ms=" + std::to_string(frame.t_ms) +
                                               ": probability outside [0,1]");
    }
  }
  double sum = frame.p_neg + frame.p_neu + frame.p_pos;
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::InvalidFrame, "frame at t_ms=" + std::to_string(frame.t_ms) +
                                             ": probabilities sum to " + std::to_string(sum));
  }
}

int classify_frame(const ValenceFrame& frame) {
  validate(frame);
  // Neutral wins any tie it takes part in; a tie between the two polar
  // classes alone is also neutral.
  if (frame.p_neu >= frame.p_neg && frame.p_neu >= frame.p_pos) return 0;
  if (frame.p_pos > frame.p_neg) return 1;
  if (frame.p_neg > frame.p_pos) return -1;
  return 0;
}

EmotionCategory categorize(double value) {
  if (!(value >= -1.0 && value <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "emotion value " + std::to_string(value) + " outside [-1, 1]");
  }
  if (value < -kNeutralBand) return EmotionCategory::Negative;
  if (value > kNeutralBand) return EmotionCategory::Positive;
  return EmotionCategory::Neutral;
}

void ValenceTracker::push(int v) {
  if (v < -1 || v > 1) throw Error(ErrorCode::InvalidFrame, "class value must be -1, 0 or +1");
  if (size_ < kCapacity) {
    ring_[(head_ + size_) % kCapacity] = v;
    ++size_;
  } else {
    ring_[head_] = v;
    head_ = (head_ + 1) % kCapacity;
  }
}

std::vector<int> ValenceTracker::values() const {
  std::vector<int> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(ring_[(head_ + i) % kCapacity]);
  return out;
}

double ValenceTracker::emotional_state() const {
  if (size_ == 0) return 0.0;
  // Integer numerator keeps the weighted sum exact; one division at the end.
  long long numerator = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    numerator += static_cast<long long>(i + 1) * ring_[(head_ + i) % kCapacity];
  }
  const long long denominator = static_cast<long long>(size_ * (size_ + 1) / 2);
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::vector<ValenceFrame> read_trace(std::istream& in, const std::string& name) {
  std::vector<ValenceFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ValenceFrame f;
    try {
      auto j = nlohmann::json::parse(line);
      f.t_ms = j.at("t_ms").get<std::int64_t>();
      f.p_neg = j.at("p_neg").get<double>();
      f.p_neu = j.at("p_neu").get<double>();
      f.p_pos = j.at("p_pos").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw LocatedError(ErrorCode::ParseError, name, line_no, e.what());
    }
    if (!frames.empty() && f.t_ms < frames.back().t_ms) {
      throw LocatedError(ErrorCode::ParseError, name, line_no, "t_ms must be ascending");
    }
    validate(f);
    frames.push_back(f);
  }
  return frames;
}

std::vector<ValenceFrame> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LocatedError(ErrorCode::ParseError, path.string(), 0, "cannot open trace");
  return read_trace(in, path.string());
}

}  // namespace affekt::perception
