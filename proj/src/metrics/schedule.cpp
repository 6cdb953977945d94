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

#include "affekt/schedule.hpp"

#include <string>

#include "affekt/error.hpp"

namespace affekt::metrics {

const char* to_string(Group group) { return group == Group::G1 ? "G1" : "G2"; }

const char* to_string(Mode mode) { return mode == Mode::EmotionOn ? "emotion_on" : "emotion_off"; }

Group parse_group(std::string_view text) {
  if (text == "G1" || text == "g1") return Group::G1;
  if (text == "G2" || text == "g2") return Group::G2;
  throw Error(ErrorCode::UnknownGroup, "unknown group '" + std::string(text) + "'");
}

Mode parse_mode(std::string_view text) {
  if (text == "emotion_on" || text == "on") return Mode::EmotionOn;
  if (text == "emotion_off" || text == "off") return Mode::EmotionOff;
  throw Error(ErrorCode::OutOfRange, "unknown mode '" + std::string(text) + "'");
}

Mode crossover_schedule(Group group, int session_number) {
  if (session_number < 1 || session_number > kSessionsPerParticipant) {
    throw Error(ErrorCode::OutOfRange,
                "session number " + std::to_string(session_number) + " outside 1..6");
  }
  bool first_block = session_number <= kSessionsPerCondition;
  if (group == Group::G1) return first_block ? Mode::EmotionOff : Mode::EmotionOn;
  return first_block ? Mode::EmotionOn : Mode::EmotionOff;
}

}  // namespace affekt::metrics
