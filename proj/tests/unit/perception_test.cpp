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

#include <algorithm>
#include <random>
#include <sstream>

#include "affekt/error.hpp"
#include "affekt/perception.hpp"
#include "support/oracles.hpp"

namespace {

using namespace affekt;
using namespace affekt::perception;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidConfig;
}

TEST(ClassifyFrame, Argmax) {
  EXPECT_EQ(classify_frame({0, 0.1, 0.2, 0.7}), 1);
  EXPECT_EQ(classify_frame({0, 1.0, 0.0, 0.0}), -1);
  EXPECT_EQ(classify_frame({0, 0.2, 0.6, 0.2}), 0);
}

TEST(ClassifyFrame, TiesResolveToNeutral) {
  EXPECT_EQ(classify_frame({0, 0.4, 0.2, 0.4}), 0);
  EXPECT_EQ(classify_frame({0, 0.45, 0.45, 0.1}), 0);
  EXPECT_EQ(classify_frame({0, 0.1, 0.45, 0.45}), 0);
  EXPECT_EQ(classify_frame({0, 1.0 / 3, 1.0 / 3, 1.0 / 3}), 0);
}

TEST(ClassifyFrame, OneHotIsIdentity) {
  EXPECT_EQ(classify_frame({0, 1, 0, 0}), -1);
  EXPECT_EQ(classify_frame({0, 0, 1, 0}), 0);
  EXPECT_EQ(classify_frame({0, 0, 0, 1}), 1);
}

TEST(ClassifyFrame, RejectsInvalidProbabilities) {
  EXPECT_EQ(code_of([] { classify_frame({0, 0.5, 0.5, 0.2}); }), ErrorCode::InvalidFrame);
  EXPECT_EQ(code_of([] { classify_frame({0, -0.1, 0.6, 0.5}); }), ErrorCode::InvalidFrame);
  EXPECT_EQ(code_of([] { classify_frame({0, 1.1, -0.1, 0.0}); }), ErrorCode::InvalidFrame);
  EXPECT_EQ(code_of([] { classify_frame({0, std::nan(""), 0.5, 0.5}); }), ErrorCode::InvalidFrame);
  // Within the 1e-6 sum tolerance.
  EXPECT_NO_THROW(classify_frame({0, 0.3, 0.3, 0.4 + 5e-7}));
}

TEST(Tracker, PushAndEvict) {
  ValenceTracker t;
  t.push(1);
  EXPECT_EQ(t.values(), (std::vector<int>{1}));
  ValenceTracker full;
  for (int i = 0; i < 30; ++i) full.push(0);
  full.push(1);
  std::vector<int> want(29, 0);
  want.push_back(1);
  EXPECT_EQ(full.values(), want);
  EXPECT_EQ(full.size(), 30u);
}

TEST(Tracker, KeepsLastThirtyOfLongSequence) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(-1, 1);
  std::vector<int> seq;
  ValenceTracker t;
  for (int i = 0; i < 45; ++i) {
    seq.push_back(v(rng));
    t.push(seq.back());
  }
  EXPECT_EQ(t.values(), std::vector<int>(seq.end() - 30, seq.end()));
}

TEST(Tracker, RejectsNonClassValue) {
  ValenceTracker t;
  EXPECT_EQ(code_of([&] { t.push(2); }), ErrorCode::InvalidFrame);
  EXPECT_TRUE(t.empty());
}

TEST(EmotionalState, Examples) {
  ValenceTracker t;
  EXPECT_EQ(t.emotional_state(), 0.0);
  for (int i = 0; i < 30; ++i) t.push(1);
  EXPECT_DOUBLE_EQ(t.emotional_state(), 1.0);
  ValenceTracker u;
  for (int i = 0; i < 29; ++i) u.push(0);
  u.push(1);
  EXPECT_NEAR(u.emotional_state(), 30.0 / 465.0, 1e-15);
  EXPECT_NEAR(u.emotional_state(), 0.0645161, 1e-7);
}

TEST(EmotionalState, WarmUpRenormalizes) {
  ValenceTracker t;
  t.push(-1);
  t.push(1);
  // Weights 1/3 and 2/3.
  EXPECT_NEAR(t.emotional_state(), 1.0 / 3.0, 1e-15);
  t.clear();
  EXPECT_EQ(t.emotional_state(), 0.0);
}

TEST(EmotionalStateProperty, MatchesOracleAndStaysInRange) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> len(0, 100), v(-1, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> seq(static_cast<std::size_t>(len(rng)));
    ValenceTracker t;
    for (int& x : seq) {
      x = v(rng);
      t.push(x);
    }
    double got = t.emotional_state();
    EXPECT_NEAR(got, oracle::emotional_state(seq), 1e-12);
    if (!seq.empty()) {
      auto window = t.values();
      EXPECT_GE(got, *std::min_element(window.begin(), window.end()));
      EXPECT_LE(got, *std::max_element(window.begin(), window.end()));
    }
  }
}

TEST(EmotionalStateProperty, NewestFrameRaisesState) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> len(0, 60), v(-1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    ValenceTracker low, high;
    for (int n = len(rng); n > 0; --n) {
      int x = v(rng);
      low.push(x);
      high.push(x);
    }
    low.push(-1);
    high.push(1);
    EXPECT_GT(high.emotional_state(), low.emotional_state());
  }
}

TEST(Categorize, Boundaries) {
  EXPECT_EQ(categorize(-0.1), EmotionCategory::Neutral);
  EXPECT_EQ(categorize(0.1), EmotionCategory::Neutral);
  EXPECT_EQ(categorize(0.5), EmotionCategory::Positive);
  EXPECT_EQ(categorize(-0.2), EmotionCategory::Negative);
  EXPECT_EQ(categorize(-1.0), EmotionCategory::Negative);
  EXPECT_EQ(categorize(1.0), EmotionCategory::Positive);
  EXPECT_EQ(categorize(std::nextafter(0.1, 1.0)), EmotionCategory::Positive);
  EXPECT_EQ(categorize(std::nextafter(-0.1, -1.0)), EmotionCategory::Negative);
}

TEST(Categorize, OutOfRange) {
  EXPECT_EQ(code_of([] { categorize(1.0000001); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { categorize(-2); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { categorize(std::nan("")); }), ErrorCode::OutOfRange);
}

TEST(CategorizeProperty, GridPartitionIsMonotone) {
  int previous = -2;
  for (int i = 0; i <= 10000; ++i) {
    double x = -1.0 + i / 5000.0;
    int c = static_cast<int>(categorize(x));
    EXPECT_GE(c, previous) << x;
    previous = c;
  }
}

TEST(Trace, ReadsJsonLines) {
  std::istringstream in(
      "{\"t_ms\": 0, \"p_neg\": 0.1, \"p_neu\": 0.2, \"p_pos\": 0.7}\n\n"
      "{\"t_ms\": 100, \"p_neg\": 0.6, \"p_neu\": 0.2, \"p_pos\": 0.2}\n");
  auto frames = read_trace(in, "t.jsonl");
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[1].t_ms, 100);
  EXPECT_EQ(classify_frame(frames[1]), -1);
}

TEST(Trace, RejectsDescendingTimeAndGarbage) {
  std::istringstream back("{\"t_ms\": 5, \"p_neg\": 0, \"p_neu\": 1, \"p_pos\": 0}\n"
                          "{\"t_ms\": 4, \"p_neg\": 0, \"p_neu\": 1, \"p_pos\": 0}\n");
  try {
    read_trace(back, "t.jsonl");
    FAIL();
  } catch (const LocatedError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream junk("{\"t_ms\": 5");
  EXPECT_EQ(code_of([&] { read_trace(junk, "j"); }), ErrorCode::ParseError);
}

TEST(Trace, SampleFileLoads) {
  auto frames = load_trace(oracle::data_dir() + "/study/cards-trace.jsonl");
  EXPECT_EQ(frames.size(), 600u);
}

}  // namespace
