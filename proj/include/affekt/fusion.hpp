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

#include <span>
#include <vector>

#include "affekt/perception.hpp"

namespace affekt::fusion {

// Per-modality weights. Non-negative and summing to one.
class SensitivityVector {
 public:
  // Throws InvalidSensitivity when the weights are negative, non-finite,
  // empty or do not sum to 1 within 1e-12.
  explicit SensitivityVector(std::vector<double> weights);

  // Equal weight on utterance sentiment and facial emotional state.
  static SensitivityVector balanced() { return SensitivityVector({0.5, 0.5}); }

  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

inline constexpr double kSensitivityTolerance = 1e-12;

// Dot product of the modality values with the weights.
// Throws DimensionMismatch when the sizes differ.
double fuse(std::span<const double> inputs, const SensitivityVector& s);

struct FinalEmotion {
  double value = 0.0;
  perception::EmotionCategory category = perception::EmotionCategory::Neutral;
};

// Fuses (sentiment, emotional state) with s and categorizes the result.
// Both inputs must lie in [-1, +1].
FinalEmotion final_emotion(double sentiment, double emotional_state,
                           const SensitivityVector& s = SensitivityVector::balanced());

}  // namespace affekt::fusion
