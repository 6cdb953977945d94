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

// Conversation engine: preprocessing, matching, emotion-branch rendering,
// expression mirroring and per-session state.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affekt/fusion.hpp"
#include "affekt/markup.hpp"
#include "affekt/perception.hpp"
#include "affekt/schedule.hpp"
#include "affekt/sentiment.hpp"
#include "affekt/text.hpp"

namespace affekt::brain {

using metrics::Group;
using metrics::Mode;
using perception::EmotionCategory;

enum class Expression { Happy, Compassionate, Neutral };
enum class TurnState { RobotSpeaking, UserTurn };
enum class Phase { Pre, Post };
// Which arm of a <getsentiment> node was rendered.
enum class Arm { Positive, Neutral, Negative, Default };

const char* to_string(Expression e);  // "happy" / "compassionate" / "neutral"
const char* to_string(TurnState s);   // "robot_speaking" / "user_turn"
const char* to_string(Phase p);       // "pre" / "post"
const char* to_string(Arm a);
Phase parse_phase(std::string_view text);

inline constexpr int kMaxSraiDepth = 8;
inline constexpr int kFaceScaleMax = 10;

struct EngineResponse {
  std::string reply;
  Expression expression = Expression::Neutral;
  std::vector<markup::MediaRef> media;
  std::optional<std::vector<std::string>> options;
  TurnState turn_state = TurnState::RobotSpeaking;
};

struct Turn {
  std::int64_t t_ms = 0;
  std::string user_text;
  Tokens tokens;
  std::size_t word_count = 0;
  double sentiment = 0.0;
  double emotional_state = 0.0;
  fusion::FinalEmotion final_emotion;
  std::string robot_reply;
  Expression expression = Expression::Neutral;
  std::string category_id;
  // True when the utterance picked one of the offered answer options.
  bool option_answer = false;
  std::vector<Arm> arms;
};

struct FaceScale {
  std::optional<int> pre;
  std::optional<int> post;
};

struct Session {
  std::string session_id;
  std::string participant_id;
  Group group = Group::G1;
  int session_number = 1;
  Mode mode = Mode::EmotionOff;
  perception::ValenceTracker tracker;
  Tokens last_robot_utterance;
  std::map<std::string, std::string> variables;
  std::vector<Turn> transcript;
  FaceScale face_scale;
  std::int64_t started_at = 0;
  std::optional<std::int64_t> ended_at;
  TurnState turn_state = TurnState::RobotSpeaking;
  std::optional<std::vector<std::string>> pending_options;
  // Session log, oldest first. Each entry is one JSON Lines record.
  std::vector<nlohmann::json> events;

  bool open() const { return !ended_at.has_value(); }
};

// EmotionOn picks the arm for `category`; EmotionOff always the default arm.
const markup::Template& select_branch(EmotionCategory category, const markup::EmotionBranchNode& node,
                                      Mode mode);

// EmotionOn mirrors: Positive -> Happy, Negative -> Compassionate. EmotionOff
// is always Neutral.
Expression select_expression(EmotionCategory category, Mode mode);

struct EngineConfig {
  fusion::SensitivityVector sensitivity = fusion::SensitivityVector::balanced();
  // Milliseconds timestamp source; system clock when empty.
  std::function<std::int64_t()> clock;
};

class Engine {
 public:
  Engine(std::shared_ptr<const markup::KnowledgeBase> kb,
         std::shared_ptr<const sentiment::Analyzer> analyzer, EngineConfig config = {});

  struct Started {
    Session session;
    EngineResponse opening;
  };

  // Creates the session with its scheduled mode and renders the opening line,
  // the category matching "START SESSION <n>". Throws SessionLimitExceeded or
  // GroupMismatch. Safe to call concurrently.
  Started start_session(const std::string& participant_id, Group group, int session_number);

  // Validates every frame first, then classifies and pushes them in order.
  // Returns the number accepted. Throws InvalidFrame or SessionClosed.
  std::size_t push_frames(Session& session, std::span<const perception::ValenceFrame> frames) const;

  // Throws SessionClosed, NotUserTurn, or PhaseOrder once the post rating is in.
  EngineResponse handle_utterance(Session& session, std::string_view text) const;

  // The robot finished delivering its reply; the user may speak.
  void reply_delivered(Session& session) const;

  // Throws OutOfRange, DuplicatePhase, PhaseOrder (pre after the first turn)
  // or SessionClosed.
  void record_face_scale(Session& session, Phase phase, int score) const;

  void end_session(Session& session) const;

  const markup::KnowledgeBase& knowledge_base() const { return *kb_; }
  const fusion::SensitivityVector& sensitivity() const { return config_.sensitivity; }

 private:
  std::int64_t now() const;

  std::shared_ptr<const markup::KnowledgeBase> kb_;
  std::shared_ptr<const sentiment::Analyzer> analyzer_;
  EngineConfig config_;

  struct Participant {
    Group group;
    std::vector<int> sessions;
  };
  std::mutex registry_mutex_;
  std::map<std::string, Participant> participants_;
  std::uint64_t next_session_ = 1;
};

// Session log records. Every record carries "event", "session_id" and "t_ms".
namespace log {
nlohmann::json to_json(const EngineResponse& response);
nlohmann::json to_json(const Turn& turn);
nlohmann::json snapshot(const Session& session);
}  // namespace log

}  // namespace affekt::brain
