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

#include <string_view>

namespace affekt::metrics {

enum class Group { G1, G2 };
enum class Mode { EmotionOn, EmotionOff };

inline constexpr int kSessionsPerParticipant = 6;
inline constexpr int kSessionsPerCondition = 3;

const char* to_string(Group group);  // "G1" / "G2"
const char* to_string(Mode mode);    // "emotion_on" / "emotion_off"

// Accepts "G1"/"g1"/"G2"/"g2". Throws UnknownGroup.
Group parse_group(std::string_view text);
// Accepts "emotion_on"/"on" and "emotion_off"/"off". Throws OutOfRange.
Mode parse_mode(std::string_view text);

// Crossover design: G1 runs sessions 1-3 without emotion and 4-6 with it,
// G2 the reverse. Throws OutOfRange for sessions outside 1..6.
Mode crossover_schedule(Group group, int session_number);

}  // namespace affekt::metrics
