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

#include <gtest/gtest.h>

#include "affekt/error.hpp"
#include "affekt/schedule.hpp"

namespace {

using namespace affekt;
using namespace affekt::metrics;

TEST(Crossover, Examples) {
  EXPECT_EQ(crossover_schedule(Group::G1, 3), Mode::EmotionOff);
  EXPECT_EQ(crossover_schedule(Group::G2, 5), Mode::EmotionOff);
  EXPECT_EQ(crossover_schedule(Group::G2, 2), Mode::EmotionOn);
  EXPECT_EQ(crossover_schedule(Group::G1, 4), Mode::EmotionOn);
}

TEST(Crossover, ThreePerConditionAndComplementary) {
  for (Group g : {Group::G1, Group::G2}) {
    int on = 0;
    for (int n = 1; n <= 6; ++n) on += crossover_schedule(g, n) == Mode::EmotionOn;
    EXPECT_EQ(on, 3);
  }
  for (int n = 1; n <= 6; ++n) EXPECT_NE(crossover_schedule(Group::G1, n), crossover_schedule(Group::G2, n));
}

TEST(Crossover, OutOfRange) {
  for (int n : {0, 7, -1}) {
    try {
      crossover_schedule(Group::G1, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
  }
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(parse_group("G2"), Group::G2);
  EXPECT_STREQ(to_string(Mode::EmotionOff), "emotion_off");
  EXPECT_EQ(parse_mode("on"), Mode::EmotionOn);
  EXPECT_EQ(parse_mode("emotion_off"), Mode::EmotionOff);
  try {
    parse_group("G3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownGroup);
  }
}

}  // namespace
