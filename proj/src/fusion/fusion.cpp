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

#include "affekt/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "affekt/error.hpp"

namespace affekt::fusion {

SensitivityVector::SensitivityVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidSensitivity, "sensitivity vector is empty");
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::InvalidSensitivity, "sensitivity weights must be finite and non-negative");
    }
  }
  double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSensitivityTolerance) {
    throw Error(ErrorCode::InvalidSensitivity, "sensitivity weights sum to " + std::to_string(sum));
  }
}

double fuse(std::span<const double> inputs, const SensitivityVector& s) {
  if (inputs.size() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch, "fuse: " + std::to_string(inputs.size()) +
                                                  " inputs for " + std::to_string(s.size()) + " weights");
  }
  double value = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) value += inputs[k] * s.weights()[k];
  return value;
}

FinalEmotion final_emotion(double sentiment, double emotional_state, const SensitivityVector& s) {
  for (double v : {sentiment, emotional_state}) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw Error(ErrorCode::OutOfRange, "fusion input " + std::to_string(v) + " outside [-1, 1]");
    }
  }
  const double inputs[] = {sentiment, emotional_state};
  // Rounding in the weights may push a saturated input a hair past the bound.
  double value = std::clamp(fuse(inputs, s), -1.0, 1.0);
  return {value, perception::categorize(value)};
}

}  // namespace affekt::fusion
