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

#include <array>
#include <functional>
#include <random>

#include "affekt/error.hpp"
#include "affekt/metrics.hpp"
#include "support/oracles.hpp"

namespace {

using namespace affekt;
using namespace affekt::metrics;
using perception::EmotionCategory;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidConfig;
}

std::vector<EmotionCategory> trace(int pos, int neu, int neg) {
  std::vector<EmotionCategory> t;
  t.insert(t.end(), pos, EmotionCategory::Positive);
  t.insert(t.end(), neu, EmotionCategory::Neutral);
  t.insert(t.end(), neg, EmotionCategory::Negative);
  return t;
}

TEST(EmotionPercentages, Examples) {
  auto a = session_emotion_percentages(trace(10, 5, 5));
  EXPECT_DOUBLE_EQ(a.positive, 50);
  EXPECT_DOUBLE_EQ(a.neutral, 25);
  EXPECT_DOUBLE_EQ(a.negative, 25);
  auto b = session_emotion_percentages(trace(0, 7, 0));
  EXPECT_DOUBLE_EQ(b.neutral, 100);
  EXPECT_DOUBLE_EQ(b.positive, 0);
  EXPECT_EQ(code_of([] { session_emotion_percentages(std::vector<EmotionCategory>{}); }), ErrorCode::EmptyTrace);
}

TEST(EmotionPercentages, SyntheticMixRoundTrips) {
  auto p = session_emotion_percentages(trace(450, 213, 337));
  EXPECT_NEAR(p.positive, 45.0, 1e-12);
  EXPECT_NEAR(p.neutral, 21.3, 1e-12);
  EXPECT_NEAR(p.negative, 33.7, 1e-12);
}

TEST(EmotionPercentagesProperty, SumToHundred) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> n(0, 200);
  for (int i = 0; i < 500; ++i) {
    auto t = trace(n(rng), n(rng), n(rng) + 1);
    auto p = session_emotion_percentages(t);
    EXPECT_NEAR(p.positive + p.neutral + p.negative, 100.0, 1e-9);
  }
}

TEST(WordCount, Examples) {
  std::vector<std::vector<std::size_t>> a{{4, 4, 4}};
  EXPECT_EQ(mean_word_count(a).mean, 4.0);
  EXPECT_EQ(mean_word_count(a).std, 0.0);
  std::vector<std::vector<std::size_t>> b{{3}, {5}};
  EXPECT_EQ(mean_word_count(b).mean, 4.0);
  EXPECT_EQ(mean_word_count(b).std, 1.0);
  std::vector<std::vector<std::size_t>> c{{7}};
  EXPECT_EQ(mean_word_count(c).mean, 7.0);
  std::vector<std::vector<std::size_t>> none{{}, {}};
  EXPECT_EQ(code_of([&] { mean_word_count(none); }), ErrorCode::EmptyInput);
}

TEST(Wilcoxon, AllPositiveFive) {
  std::vector<double> pre{1, 2, 3, 4, 5}, post{2, 3, 4, 5, 6};
  auto r = wilcoxon_signed_rank(pre, post);
  EXPECT_EQ(r.w_minus, 0.0);
  EXPECT_EQ(r.w_plus, 15.0);
  EXPECT_EQ(r.method, WilcoxonResult::Method::Exact);
  EXPECT_EQ(r.p_two_sided, 0.0625);
}

TEST(Wilcoxon, Errors) {
  std::vector<double> a{1, 2, 3}, b{1, 2};
  EXPECT_EQ(code_of([&] { wilcoxon_signed_rank(a, b); }), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([&] { wilcoxon_signed_rank(a, a); }), ErrorCode::AllZeroDifferences);
  std::vector<double> empty;
  EXPECT_EQ(code_of([&] { wilcoxon_signed_rank(empty, empty); }), ErrorCode::EmptyInput);
}

TEST(Wilcoxon, DropsZerosAndAveragesTies) {
  std::vector<double> pre{5, 5, 5, 5, 5}, post{5, 6, 4, 7, 7};
  // diffs 0, +1, -1, +2, +2 -> ranks 1.5, 1.5, 3.5, 3.5
  auto r = wilcoxon_signed_rank(pre, post);
  EXPECT_EQ(r.n, 4u);
  EXPECT_EQ(r.w_plus, 8.5);
  EXPECT_EQ(r.w_minus, 1.5);
}

TEST(WilcoxonProperty, ExactMatchesEnumeration) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> len(1, 12), score(0, 4);
  int checked = 0;
  while (checked < 400) {
    std::vector<double> pre(static_cast<std::size_t>(len(rng))), post(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) {
      pre[i] = score(rng);
      post[i] = score(rng);
    }
    auto want = oracle::wilcoxon_enumerate(pre, post);
    if (want.n == 0) continue;
    auto got = wilcoxon_signed_rank(pre, post);
    ASSERT_EQ(got.method, WilcoxonResult::Method::Exact);
    EXPECT_EQ(got.n, want.n);
    EXPECT_DOUBLE_EQ(got.w_plus, want.w_plus);
    EXPECT_DOUBLE_EQ(got.w_minus, want.w_minus);
    EXPECT_NEAR(got.p_two_sided, want.p, 1e-12);
    ++checked;
  }
}

TEST(Wilcoxon, NormalApproximationForLargeSamples) {
  std::mt19937 rng(5);
  std::normal_distribution<double> noise(0, 1);
  std::vector<double> pre, post;
  for (int i = 0; i < 60; ++i) {
    pre.push_back(7 + noise(rng));
    post.push_back(pre.back() + 1.5 + noise(rng));
  }
  auto r = wilcoxon_signed_rank(pre, post);
  EXPECT_EQ(r.method, WilcoxonResult::Method::NormalApprox);
  EXPECT_LT(r.z, 0.0);
  EXPECT_LT(r.p_two_sided, 0.001);
  EXPECT_DOUBLE_EQ(r.w_plus + r.w_minus, 60.0 * 61.0 / 2.0);
}

TEST(WilcoxonProperty, NormalAgreesWithExactDirection) {
  // Thirteen pairs is the first size outside exact mode. Shifting the same
  // data further in one direction can only shrink p.
  std::vector<double> pre(13, 0.0), small(13), large(13);
  for (int i = 0; i < 13; ++i) {
    small[i] = i < 9 ? i + 1 : -(i - 8);
    large[i] = i + 1;
  }
  auto a = wilcoxon_signed_rank(pre, small);
  auto b = wilcoxon_signed_rank(pre, large);
  EXPECT_EQ(a.method, WilcoxonResult::Method::NormalApprox);
  EXPECT_GT(a.p_two_sided, b.p_two_sided);
  EXPECT_LT(b.p_two_sided, 0.01);
}

TEST(Phq9, Examples) {
  std::array<int, 9> zeros{}, threes;
  threes.fill(3);
  EXPECT_EQ(score_phq9(zeros).score, 0);
  EXPECT_EQ(score_phq9(zeros).band, Phq9Band::Minimal);
  EXPECT_EQ(score_phq9(threes).score, 27);
  EXPECT_EQ(score_phq9(threes).band, Phq9Band::Severe);
  std::array<int, 9> mixed{2, 2, 2, 1, 1, 1, 1, 1, 1};
  EXPECT_EQ(score_phq9(mixed).score, 12);
  EXPECT_EQ(score_phq9(mixed).band, Phq9Band::Moderate);
}

TEST(Phq9, Errors) {
  std::array<int, 8> short_list{};
  EXPECT_EQ(code_of([&] { score_phq9(short_list); }), ErrorCode::WrongArity);
  std::array<int, 9> bad{0, 0, 0, 0, 4, 0, 0, 0, 0};
  EXPECT_EQ(code_of([&] { score_phq9(bad); }), ErrorCode::OutOfRange);
}

TEST(Phq9, Bands) {
  const std::pair<int, Phq9Band> cases[] = {
      {0, Phq9Band::Minimal},   {4, Phq9Band::Minimal},           {5, Phq9Band::Mild},
      {9, Phq9Band::Mild},      {10, Phq9Band::Moderate},         {14, Phq9Band::Moderate},
      {15, Phq9Band::ModeratelySevere}, {19, Phq9Band::ModeratelySevere}, {20, Phq9Band::Severe},
      {27, Phq9Band::Severe}};
  for (auto [score, band] : cases) EXPECT_EQ(phq9_band(score), band) << score;
}

TEST(Gds, ExamplesAndBands) {
  std::array<bool, 30> key{}, answers{};
  for (int i = 0; i < 30; ++i) key[i] = i % 3 == 0;
  for (int i = 0; i < 30; ++i) answers[i] = !key[i];
  EXPECT_EQ(score_gds(answers, key).score, 0);
  EXPECT_EQ(score_gds(answers, key).band, GdsBand::Normal);
  EXPECT_EQ(score_gds(key, key).score, 30);
  EXPECT_EQ(score_gds(key, key).band, GdsBand::Severe);
  for (int i = 0; i < 12; ++i) answers[i] = key[i];
  EXPECT_EQ(score_gds(answers, key).score, 12);
  EXPECT_EQ(score_gds(answers, key).band, GdsBand::Mild);
  const std::pair<int, GdsBand> cases[] = {{0, GdsBand::Normal}, {9, GdsBand::Normal},  {10, GdsBand::Mild},
                                           {19, GdsBand::Mild},  {20, GdsBand::Severe}, {30, GdsBand::Severe}};
  for (auto [score, band] : cases) EXPECT_EQ(gds_band(score), band) << score;
  std::array<bool, 29> short_list{};
  EXPECT_EQ(code_of([&] { score_gds(short_list, key); }), ErrorCode::WrongArity);
}

TEST(ScaleProperty, MonotoneInSeverity) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> a(0, 3), idx(0, 8), gi(0, 29), coin(0, 1);
  for (int t = 0; t < 500; ++t) {
    std::array<int, 9> ans;
    for (int& x : ans) x = a(rng);
    int before = score_phq9(ans).score;
    int i = idx(rng);
    if (ans[i] < 3) ++ans[i];
    EXPECT_GE(score_phq9(ans).score, before);
    EXPECT_GE(static_cast<int>(phq9_band(score_phq9(ans).score)), static_cast<int>(phq9_band(before)));

    std::array<bool, 30> key, g;
    for (int k = 0; k < 30; ++k) {
      key[k] = coin(rng);
      g[k] = coin(rng);
    }
    int gb = score_gds(g, key).score;
    int j = gi(rng);
    g[j] = key[j];
    EXPECT_GE(score_gds(g, key).score, gb);
  }
}

}  // namespace
