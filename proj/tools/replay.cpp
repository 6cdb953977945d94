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

#include "replay.hpp"

#include <fstream>
#include <httplib.h>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "affekt/error.hpp"
#include "affekt/service.hpp"

namespace affekt::tools {

namespace {

using nlohmann::json;

struct ScriptLine {
  std::optional<std::int64_t> t_ms;
  std::string text;
};

std::vector<ScriptLine> read_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open script " + path.string());
  std::vector<ScriptLine> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    ScriptLine line;
    std::size_t tab = raw.find('\t');
    if (tab != std::string::npos && tab > 0 &&
        raw.find_first_not_of("0123456789") == tab) {
      line.t_ms = std::stoll(raw.substr(0, tab));
      line.text = raw.substr(tab + 1);
    } else {
      line.text = raw;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

// Frames to post before each utterance; the extra last batch goes before the
// session ends. Timestamped scripts cut the trace at each utterance time,
// otherwise the trace is split evenly.
std::vector<std::vector<perception::ValenceFrame>> schedule_frames(
    const std::vector<perception::ValenceFrame>& frames, const std::vector<ScriptLine>& script) {
  std::vector<std::vector<perception::ValenceFrame>> batches(script.size() + 1);
  bool timed = !script.empty() && std::all_of(script.begin(), script.end(),
                                              [](const ScriptLine& l) { return l.t_ms.has_value(); });
  if (timed) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < script.size(); ++i) {
      while (next < frames.size() && frames[next].t_ms <= *script[i].t_ms) batches[i].push_back(frames[next++]);
    }
    batches.back().assign(frames.begin() + static_cast<std::ptrdiff_t>(next), frames.end());
    return batches;
  }
  if (script.empty()) {
    batches.back() = frames;
    return batches;
  }
  const std::size_t n = script.size();
  for (std::size_t k = 0; k < frames.size(); ++k) batches[k * n / frames.size()].push_back(frames[k]);
  return batches;
}

struct Target {
  metrics::Group group;
  int session;
};

Target resolve_target(const ReplayOptions& o) {
  using metrics::Group;
  std::optional<metrics::Mode> mode;
  if (o.mode) mode = metrics::parse_mode(*o.mode);
  std::optional<Group> group;
  if (o.group) group = metrics::parse_group(*o.group);

  Target t{group.value_or(Group::G1), o.session_number.value_or(1)};
  if (!o.group && !o.session_number && mode) {
    t = {*mode == metrics::Mode::EmotionOn ? Group::G2 : Group::G1, 1};
  } else if (o.group && !o.session_number && mode) {
    t.session = metrics::crossover_schedule(t.group, 1) == *mode ? 1 : 4;
  } else if (!o.group && o.session_number && mode) {
    t.group = metrics::crossover_schedule(Group::G1, t.session) == *mode ? Group::G1 : Group::G2;
  }
  if (mode && metrics::crossover_schedule(t.group, t.session) != *mode) {
    throw Error(ErrorCode::OutOfRange, std::string("mode ") + metrics::to_string(*mode) + " does not match " +
                                           metrics::to_string(t.group) + " session " + std::to_string(t.session));
  }
  return t;
}

class Api {
 public:
  explicit Api(const std::string& origin) : client_(origin) {
    client_.set_read_timeout(std::chrono::seconds(10));
  }

  json post(const std::string& path, const json& body, int expected) {
    auto res = client_.Post(path, body.dump(), "application/json");
    if (!res) throw std::runtime_error("POST " + path + ": " + httplib::to_string(res.error()));
    if (res->status != expected) {
      throw std::runtime_error("POST " + path + ": HTTP " + std::to_string(res->status) + " " + res->body);
    }
    return res->body.empty() ? json() : json::parse(res->body);
  }

 private:
  httplib::Client client_;
};

json frames_json(const std::vector<perception::ValenceFrame>& frames) {
  json out = json::array();
  for (const auto& f : frames) {
    out.push_back({{"t_ms", f.t_ms}, {"p_neg", f.p_neg}, {"p_neu", f.p_neu}, {"p_pos", f.p_pos}});
  }
  return out;
}

int drive(const std::string& origin, const ReplayOptions& o, const Target& target,
          const std::vector<perception::ValenceFrame>& frames, const std::vector<ScriptLine>& script) {
  Api api(origin);
  json started = api.post("/api/v1/sessions",
                          {{"participant_id", o.participant},
                           {"group", metrics::to_string(target.group)},
                           {"session_number", target.session}},
                          201);
  const std::string base = "/api/v1/sessions/" + started["session_id"].get<std::string>();
  std::cout << json{{"session_id", started["session_id"]}, {"mode", started["mode"]},
                    {"robot", started["opening"]["reply"]}, {"expression", started["opening"]["expression"]}}
                   .dump()
            << '\n';
  api.post(base + "/reply-done", json::object(), 204);
  if (o.face_pre) api.post(base + "/face-scale", {{"phase", "pre"}, {"score", *o.face_pre}}, 204);

  auto batches = schedule_frames(frames, script);
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (!batches[i].empty()) api.post(base + "/frames", frames_json(batches[i]), 200);
    json r = api.post(base + "/utterance", {{"text", script[i].text}}, 200);
    std::cout << json{{"user", script[i].text},
                      {"robot", r["reply"]},
                      {"expression", r["expression"]},
                      {"options", r["options"]},
                      {"diagnostics", r["diagnostics"]}}
                     .dump()
              << '\n';
    api.post(base + "/reply-done", json::object(), 204);
  }
  if (!batches.back().empty()) api.post(base + "/frames", frames_json(batches.back()), 200);
  if (o.face_post) api.post(base + "/face-scale", {{"phase", "post"}, {"score", *o.face_post}}, 204);
  api.post(base + "/end", json::object(), 204);
  return 0;
}

}  // namespace

int run_replay(const ReplayOptions& o) {
  try {
    Target target = resolve_target(o);
    auto frames = perception::load_trace(o.trace);
    auto script = read_script(o.script);

    if (o.server) return drive(*o.server, o, target, frames, script);

    auto kb = std::make_shared<markup::KnowledgeBase>(markup::KnowledgeBase::load(o.kb_dir));
    auto analyzer = std::make_shared<sentiment::LexiconAnalyzer>(sentiment::load_lexicon(o.lexicon));
    auto engine = std::make_shared<brain::Engine>(kb, analyzer);
    service::Service server(engine, o.log_dir);
    int port = server.bind("127.0.0.1", 0);
    std::thread loop([&server] { server.run(); });
    int rc = 1;
    try {
      rc = drive("http://127.0.0.1:" + std::to_string(port), o, target, frames, script);
    } catch (...) {
      server.stop();
      loop.join();
      throw;
    }
    server.stop();
    loop.join();
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "replay: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace affekt::tools
