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

#include <algorithm>
#include <chrono>

#include "affekt/brain.hpp"
#include "affekt/error.hpp"

namespace affekt::brain {

using markup::EmotionBranchNode;
using markup::MatchResult;
using markup::Template;

const char* to_string(Expression e) {
  switch (e) {
    case Expression::Happy: return "happy";
    case Expression::Compassionate: return "compassionate";
    case Expression::Neutral: return "neutral";
  }
  return "neutral";
}

const char* to_string(TurnState s) { return s == TurnState::RobotSpeaking ? "robot_speaking" : "user_turn"; }

const char* to_string(Phase p) { return p == Phase::Pre ? "pre" : "post"; }

const char* to_string(Arm a) {
  switch (a) {
    case Arm::Positive: return "positive";
    case Arm::Neutral: return "neutral";
    case Arm::Negative: return "negative";
    case Arm::Default: return "default";
  }
  return "default";
}

Phase parse_phase(std::string_view text) {
  if (text == "pre") return Phase::Pre;
  if (text == "post") return Phase::Post;
  throw Error(ErrorCode::OutOfRange, "unknown face-scale phase '" + std::string(text) + "'");
}

const Template& select_branch(EmotionCategory category, const EmotionBranchNode& node, Mode mode) {
  if (mode == Mode::EmotionOff) return node.fallback;
  switch (category) {
    case EmotionCategory::Positive: return node.positive;
    case EmotionCategory::Negative: return node.negative;
    case EmotionCategory::Neutral: break;
  }
  return node.neutral;
}

Expression select_expression(EmotionCategory category, Mode mode) {
  if (mode == Mode::EmotionOff) return Expression::Neutral;
  switch (category) {
    case EmotionCategory::Positive: return Expression::Happy;
    case EmotionCategory::Negative: return Expression::Compassionate;
    case EmotionCategory::Neutral: break;
  }
  return Expression::Neutral;
}

namespace {

std::string tidy(std::string_view text) {
  std::string out;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (space) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Renders one matched template for a turn.
class Renderer {
 public:
  Renderer(const markup::KnowledgeBase& kb, Session& session, EmotionCategory category, bool use_default_arm)
      : kb_(kb), session_(session), category_(category),
        mode_(use_default_arm ? Mode::EmotionOff : session.mode) {}

  std::string run(const MatchResult& match) { return tidy(render(match.category->body, match, 0)); }

  std::vector<markup::MediaRef> media;
  std::optional<std::vector<std::string>> options;
  std::vector<Arm> arms;

 private:
  Tokens topic() const {
    auto it = session_.variables.find("topic");
    return it == session_.variables.end() ? Tokens{} : normalize(it->second);
  }

  std::string render(const Template& body, const MatchResult& match, int depth) {
    std::string out;
    for (const markup::TemplateNode& node : body) {
      std::visit([&](const auto& n) { out += render_node(n, match, depth); }, node.value);
    }
    return out;
  }

  std::string render_node(const markup::TextNode& n, const MatchResult&, int) { return n.text; }

  std::string render_node(const markup::StarNode& n, const MatchResult& match, int) {
    if (n.index == 0 || n.index > match.captures.size()) return {};
    return join(match.captures[n.index - 1]);
  }

  std::string render_node(const markup::SraiNode& n, const MatchResult& match, int depth) {
    if (depth + 1 > kMaxSraiDepth) {
      throw Error(ErrorCode::SraiDepthExceeded,
                  "srai redirection deeper than " + std::to_string(kMaxSraiDepth) + " in " + match.category->id);
    }
    Tokens redirect = normalize(render(n.body, match, depth));
    Tokens current_topic = topic();
    const Tokens* that = session_.last_robot_utterance.empty() ? nullptr : &session_.last_robot_utterance;
    auto target = kb_.match(redirect, that, current_topic.empty() ? nullptr : &current_topic);
    if (!target) target = MatchResult{&kb_.fallback(), {redirect}, {}};
    return render(target->category->body, *target, depth + 1);
  }

  std::string render_node(const markup::SetNode& n, const MatchResult& match, int depth) {
    session_.variables[n.name] = tidy(render(n.body, match, depth));
    return {};
  }

  std::string render_node(const markup::GetNode& n, const MatchResult&, int) {
    auto it = session_.variables.find(n.name);
    return it == session_.variables.end() ? std::string{} : it->second;
  }

  std::string render_node(const markup::RobotNode& n, const MatchResult&, int) {
    media.insert(media.end(), n.media.begin(), n.media.end());
    if (!n.options.empty()) options = n.options;
    return {};
  }

  std::string render_node(const EmotionBranchNode& n, const MatchResult& match, int depth) {
    const Template& arm = select_branch(category_, n, mode_);
    arms.push_back(&arm == &n.fallback   ? Arm::Default
                   : &arm == &n.positive ? Arm::Positive
                   : &arm == &n.negative ? Arm::Negative
                                         : Arm::Neutral);
    return render(arm, match, depth);
  }

  const markup::KnowledgeBase& kb_;
  Session& session_;
  EmotionCategory category_;
  Mode mode_;
};

nlohmann::json media_json(const std::vector<markup::MediaRef>& media) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : media) {
    out.push_back({{"kind", m.kind == markup::MediaRef::Kind::Image ? "image" : "video"}, {"href", m.href}});
  }
  return out;
}

nlohmann::json event(const Session& session, const char* name, std::int64_t t_ms) {
  return {{"event", name}, {"session_id", session.session_id}, {"t_ms", t_ms}};
}

void require_open(const Session& session) {
  if (!session.open()) throw Error(ErrorCode::SessionClosed, "session " + session.session_id + " is closed");
}

}  // namespace

Engine::Engine(std::shared_ptr<const markup::KnowledgeBase> kb,
               std::shared_ptr<const sentiment::Analyzer> analyzer, EngineConfig config)
    : kb_(std::move(kb)), analyzer_(std::move(analyzer)), config_(std::move(config)) {
  if (config_.sensitivity.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "engine fuses exactly two modalities");
  }
}

std::int64_t Engine::now() const {
  if (config_.clock) return config_.clock();
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

Engine::Started Engine::start_session(const std::string& participant_id, Group group, int session_number) {
  if (session_number < 1 || session_number > metrics::kSessionsPerParticipant) {
    throw Error(ErrorCode::SessionLimitExceeded,
                "session number " + std::to_string(session_number) + " outside 1..6");
  }
  Started started;
  Session& s = started.session;
  {
    std::lock_guard lock(registry_mutex_);
    auto [it, inserted] = participants_.try_emplace(participant_id, Participant{group, {}});
    Participant& p = it->second;
    if (p.group != group) {
      throw Error(ErrorCode::GroupMismatch, "participant " + participant_id + " belongs to " +
                                                metrics::to_string(p.group));
    }
    if (p.sessions.size() >= static_cast<std::size_t>(metrics::kSessionsPerParticipant)) {
      throw Error(ErrorCode::SessionLimitExceeded, "participant " + participant_id + " already had 6 sessions");
    }
    if (std::find(p.sessions.begin(), p.sessions.end(), session_number) != p.sessions.end()) {
      throw Error(ErrorCode::SessionLimitExceeded, "participant " + participant_id + " already had session " +
                                                       std::to_string(session_number));
    }
    p.sessions.push_back(session_number);
    s.session_id = participant_id + "-s" + std::to_string(session_number) + "-" + std::to_string(next_session_++);
  }
  s.participant_id = participant_id;
  s.group = group;
  s.session_number = session_number;
  s.mode = metrics::crossover_schedule(group, session_number);
  s.started_at = now();

  Tokens opening_input = {"START", "SESSION", std::to_string(session_number)};
  auto match = kb_->match(opening_input);
  if (!match) match = MatchResult{&kb_->fallback(), {opening_input}, {}};
  auto emotion = fusion::final_emotion(0.0, s.tracker.emotional_state(), config_.sensitivity);
  Renderer renderer(*kb_, s, emotion.category, false);
  EngineResponse& r = started.opening;
  r.reply = renderer.run(*match);
  r.expression = select_expression(emotion.category, s.mode);
  r.media = std::move(renderer.media);
  r.options = std::move(renderer.options);
  r.turn_state = TurnState::RobotSpeaking;
  s.last_robot_utterance = normalize(r.reply);
  s.pending_options = r.options;
  s.turn_state = TurnState::RobotSpeaking;

  auto e = event(s, "session_started", s.started_at);
  e["participant_id"] = s.participant_id;
  e["group"] = metrics::to_string(s.group);
  e["session_number"] = s.session_number;
  e["mode"] = metrics::to_string(s.mode);
  e["opening"] = log::to_json(r);
  s.events.push_back(std::move(e));
  return started;
}

std::size_t Engine::push_frames(Session& session, std::span<const perception::ValenceFrame> frames) const {
  require_open(session);
  std::vector<int> values;
  values.reserve(frames.size());
  for (const auto& f : frames) values.push_back(perception::classify_frame(f));
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].t_ms < frames[i - 1].t_ms) {
      throw Error(ErrorCode::InvalidFrame, "frames must be in ascending t_ms order");
    }
  }
  if (frames.empty()) return 0;
  nlohmann::json batch = nlohmann::json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    session.tracker.push(values[i]);
    batch.push_back({{"t_ms", frames[i].t_ms},
                     {"p_neg", frames[i].p_neg},
                     {"p_neu", frames[i].p_neu},
                     {"p_pos", frames[i].p_pos},
                     {"value", values[i]}});
  }
  auto e = event(session, "frame_batch", now());
  e["frames"] = std::move(batch);
  e["emotional_state"] = session.tracker.emotional_state();
  session.events.push_back(std::move(e));
  return frames.size();
}

EngineResponse Engine::handle_utterance(Session& session, std::string_view text) const {
  require_open(session);
  if (session.face_scale.post) {
    throw Error(ErrorCode::PhaseOrder, "post-session rating already recorded");
  }
  if (session.turn_state != TurnState::UserTurn) {
    throw Error(ErrorCode::NotUserTurn, "the robot has not finished its reply");
  }

  Turn turn;
  turn.t_ms = now();
  turn.user_text = std::string(text);
  turn.tokens = normalize(text);
  turn.word_count = turn.tokens.size();
  turn.sentiment = std::clamp(analyzer_->analyze(text), -1.0, 1.0);
  turn.emotional_state = session.tracker.emotional_state();
  turn.final_emotion = fusion::final_emotion(turn.sentiment, turn.emotional_state, config_.sensitivity);

  if (session.pending_options) {
    for (const std::string& option : *session.pending_options) {
      if (normalize(option) == turn.tokens) turn.option_answer = true;
    }
  }

  auto variables = session.variables;
  Tokens topic;
  if (auto it = session.variables.find("topic"); it != session.variables.end()) topic = normalize(it->second);
  const Tokens* that = session.last_robot_utterance.empty() ? nullptr : &session.last_robot_utterance;
  auto match = kb_->match(turn.tokens, that, topic.empty() ? nullptr : &topic);
  if (!match) match = MatchResult{&kb_->fallback(), {turn.tokens}, {}};

  session.turn_state = TurnState::RobotSpeaking;
  Renderer renderer(*kb_, session, turn.final_emotion.category, turn.option_answer);
  EngineResponse response;
  try {
    response.reply = renderer.run(*match);
  } catch (...) {
    session.variables = std::move(variables);
    session.turn_state = TurnState::UserTurn;
    throw;
  }
  response.expression = select_expression(turn.final_emotion.category, session.mode);
  response.media = std::move(renderer.media);
  response.options = std::move(renderer.options);
  response.turn_state = TurnState::RobotSpeaking;

  turn.robot_reply = response.reply;
  turn.expression = response.expression;
  turn.category_id = match->category->id;
  turn.arms = std::move(renderer.arms);

  session.last_robot_utterance = normalize(response.reply);
  session.pending_options = response.options;

  auto e = event(session, "turn", turn.t_ms);
  e["index"] = session.transcript.size();
  e.update(log::to_json(turn));
  e["media"] = media_json(response.media);
  e["options"] = response.options ? nlohmann::json(*response.options) : nlohmann::json(nullptr);
  session.events.push_back(std::move(e));
  session.transcript.push_back(std::move(turn));
  return response;
}

void Engine::reply_delivered(Session& session) const {
  require_open(session);
  session.turn_state = TurnState::UserTurn;
}

void Engine::record_face_scale(Session& session, Phase phase, int score) const {
  require_open(session);
  if (score < 0 || score > kFaceScaleMax) {
    throw Error(ErrorCode::OutOfRange, "face-scale score " + std::to_string(score) + " outside 0..10");
  }
  std::optional<int>& slot = phase == Phase::Pre ? session.face_scale.pre : session.face_scale.post;
  if (slot) throw Error(ErrorCode::DuplicatePhase, std::string(to_string(phase)) + " rating already recorded");
  if (phase == Phase::Pre && !session.transcript.empty()) {
    throw Error(ErrorCode::PhaseOrder, "pre-session rating must precede the first turn");
  }
  slot = score;
  auto e = event(session, "face_scale", now());
  e["phase"] = to_string(phase);
  e["score"] = score;
  session.events.push_back(std::move(e));
}

void Engine::end_session(Session& session) const {
  require_open(session);
  session.ended_at = now();
  auto e = event(session, "session_ended", *session.ended_at);
  e["turns"] = session.transcript.size();
  session.events.push_back(std::move(e));
}

namespace log {

nlohmann::json to_json(const EngineResponse& r) {
  return {{"reply", r.reply},
          {"expression", to_string(r.expression)},
          {"media", media_json(r.media)},
          {"options", r.options ? nlohmann::json(*r.options) : nlohmann::json(nullptr)},
          {"turn_state", to_string(r.turn_state)}};
}

nlohmann::json to_json(const Turn& t) {
  nlohmann::json arms = nlohmann::json::array();
  for (Arm a : t.arms) arms.push_back(to_string(a));
  return {{"user_text", t.user_text},
          {"tokens", t.tokens},
          {"word_count", t.word_count},
          {"sentiment", t.sentiment},
          {"emotional_state", t.emotional_state},
          {"final_emotion", t.final_emotion.value},
          {"category", perception::to_string(t.final_emotion.category)},
          {"reply", t.robot_reply},
          {"expression", to_string(t.expression)},
          {"category_id", t.category_id},
          {"option_answer", t.option_answer},
          {"arms", arms}};
}

nlohmann::json snapshot(const Session& s) {
  nlohmann::json transcript = nlohmann::json::array();
  for (const Turn& t : s.transcript) {
    auto j = to_json(t);
    j["t_ms"] = t.t_ms;
    transcript.push_back(std::move(j));
  }
  return {{"session_id", s.session_id},
          {"participant_id", s.participant_id},
          {"group", metrics::to_string(s.group)},
          {"session_number", s.session_number},
          {"mode", metrics::to_string(s.mode)},
          {"open", s.open()},
          {"turn_state", to_string(s.turn_state)},
          {"emotional_state", s.tracker.emotional_state()},
          {"frames_in_window", s.tracker.size()},
          {"that", join(s.last_robot_utterance)},
          {"variables", s.variables},
          {"pending_options", s.pending_options ? nlohmann::json(*s.pending_options) : nlohmann::json(nullptr)},
          {"face_scale", {{"pre", s.face_scale.pre ? nlohmann::json(*s.face_scale.pre) : nlohmann::json(nullptr)},
                          {"post", s.face_scale.post ? nlohmann::json(*s.face_scale.post) : nlohmann::json(nullptr)}}},
          {"started_at", s.started_at},
          {"ended_at", s.ended_at ? nlohmann::json(*s.ended_at) : nlohmann::json(nullptr)},
          {"transcript", transcript}};
}

}  // namespace log

}  // namespace affekt::brain
