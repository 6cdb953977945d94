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

#include "affekt/service.hpp"

#include <chrono>
#include <cstdlib>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "affekt/error.hpp"

namespace affekt::service {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_absolute() ? p : base / p;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

void send_error(httplib::Response& res, const Error& e) {
  send_error(res, http_status(e.code()), to_string(e.code()), e.what());
}

// Parses the body as JSON or answers 400.
std::optional<json> body_json(const httplib::Request& req, httplib::Response& res) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    send_error(res, 400, "BadRequest", std::string("invalid JSON: ") + e.what());
    return std::nullopt;
  }
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, e);
  } catch (const json::exception& e) {
    send_error(res, 422, "ValidationError", e.what());
  }
}

}  // namespace

ApiConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    invalid("config " + path.string() + ": " + e.what());
  }
  const std::filesystem::path base = path.parent_path();
  ApiConfig c;
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.kb_path = resolve(base, j.at("kb_path").get<std::string>());
    c.lexicon_path = resolve(base, j.at("lexicon_path").get<std::string>());
    c.log_dir = resolve(base, j.value("log_dir", std::string("logs")));
    if (j.contains("sentiment_backend")) {
      const json& b = j["sentiment_backend"];
      if (b.is_string()) {
        if (b.get<std::string>() != "lexicon") invalid("sentiment_backend must be \"lexicon\" or {\"remote\": url}");
      } else {
        c.remote_sentiment_url = b.at("remote").get<std::string>();
      }
    }
    if (j.contains("fusion") && j["fusion"].contains("sensitivity")) {
      c.sensitivity = fusion::SensitivityVector(j["fusion"]["sensitivity"].get<std::vector<double>>());
    }
  } catch (const json::exception& e) {
    invalid("config " + path.string() + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    invalid("config " + path.string() + ": " + e.what());
  }
  if (c.port < 0 || c.port > 65535) invalid("port outside 0..65535");
  if (c.sensitivity.size() != 2) invalid("fusion.sensitivity needs [w_sentiment, w_state]");
  if (!std::filesystem::is_directory(c.kb_path)) invalid("kb_path " + c.kb_path.string() + " is not a directory");
  if (!std::filesystem::is_regular_file(c.lexicon_path)) invalid("lexicon_path " + c.lexicon_path.string() + " not found");
  return c;
}

std::optional<std::filesystem::path> resolve_config_path(const std::optional<std::filesystem::path>& cli_path) {
  if (const char* env = std::getenv("AFFEKT_CONFIG"); env && *env) return std::filesystem::path(env);
  return cli_path;
}

std::shared_ptr<const sentiment::Analyzer> make_analyzer(const ApiConfig& config) {
  auto lexicon = std::make_shared<sentiment::LexiconAnalyzer>(sentiment::load_lexicon(config.lexicon_path));
  if (!config.remote_sentiment_url) return lexicon;
  return std::make_shared<sentiment::RemoteAnalyzer>(*config.remote_sentiment_url, lexicon);
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::SessionClosed:
      return 404;
    case ErrorCode::NotUserTurn:
    case ErrorCode::DuplicatePhase:
    case ErrorCode::PhaseOrder:
      return 409;
    case ErrorCode::InvalidFrame:
    case ErrorCode::OutOfRange:
    case ErrorCode::UnknownGroup:
    case ErrorCode::SessionLimitExceeded:
    case ErrorCode::GroupMismatch:
    case ErrorCode::DimensionMismatch:
      return 422;
    case ErrorCode::BackendUnavailable:
      return 503;
    default:
      return 500;
  }
}

Service::Service(std::shared_ptr<brain::Engine> engine, std::filesystem::path log_dir)
    : engine_(std::move(engine)), log_dir_(std::move(log_dir)), http_(std::make_unique<httplib::Server>()) {
  std::filesystem::create_directories(log_dir_);
  http_->new_task_queue = [] { return new httplib::ThreadPool(16); };
  // The library default adds SO_REUSEPORT, which would let a second server
  // share a port that is already in use.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  routes();
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = http_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::InvalidConfig, "cannot bind " + host);
    return bound;
  }
  if (!http_->bind_to_port(host, port)) {
    throw Error(ErrorCode::InvalidConfig, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::run() {
  {
    std::lock_guard lock(run_mutex_);
    if (stopping_) return;
    listening_ = true;
  }
  http_->listen_after_bind();
}

void Service::stop() {
  if (stopping_.exchange(true)) return;
  bool listening = false;
  {
    std::lock_guard lock(run_mutex_);
    listening = listening_;
  }
  // A stop racing a fresh run() must wait for the listener, otherwise the
  // library ignores it and run() never returns.
  if (listening) http_->wait_until_ready();
  {
    std::shared_lock lock(sessions_mutex_);
    for (auto& [id, h] : sessions_) {
      std::lock_guard guard(h->mutex);
      flush(*h);
      h->changed.notify_all();
    }
  }
  http_->stop();
}

std::shared_ptr<Service::Handle> Service::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session " + id);
  return it->second;
}

// Caller holds handle.mutex.
void Service::flush(Handle& h) {
  const auto& events = h.session.events;
  for (; h.flushed < events.size(); ++h.flushed) h.log << events[h.flushed].dump() << '\n';
  h.log.flush();
  h.changed.notify_all();
}

void Service::routes() {
  httplib::Server& s = *http_;

  s.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });

  s.Post("/api/v1/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    guarded(res, [&] {
      auto participant = body->at("participant_id").get<std::string>();
      if (participant.empty()) throw Error(ErrorCode::OutOfRange, "participant_id is empty");
      auto group = metrics::parse_group(body->at("group").get<std::string>());
      int number = body->at("session_number").get<int>();
      auto started = engine_->start_session(participant, group, number);

      auto handle = std::make_shared<Handle>();
      handle->session = std::move(started.session);
      const std::string id = handle->session.session_id;
      handle->log.open(log_dir_ / (id + ".jsonl"), std::ios::out | std::ios::trunc);
      if (!handle->log) throw Error(ErrorCode::InvalidConfig, "cannot write log for " + id);
      {
        std::lock_guard guard(handle->mutex);
        flush(*handle);
      }
      {
        std::unique_lock lock(sessions_mutex_);
        sessions_.emplace(id, handle);
      }
      send_json(res, 201, {{"session_id", id},
                           {"mode", metrics::to_string(handle->session.mode)},
                           {"opening", brain::log::to_json(started.opening)}});
    });
  });

  s.Post(R"(/api/v1/sessions/([^/]+)/frames)", [this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      if (!body->is_array()) throw Error(ErrorCode::InvalidFrame, "expected an array of frames");
      std::vector<perception::ValenceFrame> frames;
      for (const json& f : *body) {
        frames.push_back({f.at("t_ms").get<std::int64_t>(), f.at("p_neg").get<double>(),
                          f.at("p_neu").get<double>(), f.at("p_pos").get<double>()});
      }
      std::lock_guard guard(h->mutex);
      std::size_t n = engine_->push_frames(h->session, frames);
      flush(*h);
      send_json(res, 200, {{"accepted", n}});
    });
  });

  s.Post(R"(/api/v1/sessions/([^/]+)/utterance)", [this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      auto text = body->at("text").get<std::string>();
      std::lock_guard guard(h->mutex);
      auto response = engine_->handle_utterance(h->session, text);
      flush(*h);
      const brain::Turn& turn = h->session.transcript.back();
      json out = brain::log::to_json(response);
      out["diagnostics"] = {{"sentiment", turn.sentiment},
                            {"emotional_state", turn.emotional_state},
                            {"final_emotion", turn.final_emotion.value},
                            {"category", perception::to_string(turn.final_emotion.category)}};
      send_json(res, 200, out);
    });
  });

  s.Post(R"(/api/v1/sessions/([^/]+)/reply-done)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      std::lock_guard guard(h->mutex);
      engine_->reply_delivered(h->session);
      res.status = 204;
    });
  });

  s.Post(R"(/api/v1/sessions/([^/]+)/face-scale)", [this](const httplib::Request& req, httplib::Response& res) {
    auto body = body_json(req, res);
    if (!body) return;
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      auto phase = brain::parse_phase(body->at("phase").get<std::string>());
      int score = body->at("score").get<int>();
      std::lock_guard guard(h->mutex);
      engine_->record_face_scale(h->session, phase, score);
      flush(*h);
      res.status = 204;
    });
  });

  s.Post(R"(/api/v1/sessions/([^/]+)/end)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      std::lock_guard guard(h->mutex);
      engine_->end_session(h->session);
      flush(*h);
      res.status = 204;
    });
  });

  s.Get(R"(/api/v1/sessions/([^/]+)/state)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto h = find(req.matches[1]);
      std::lock_guard guard(h->mutex);
      send_json(res, 200, brain::log::snapshot(h->session));
    });
  });

  // Server-sent events: full history, then live events until the session ends.
  s.Get(R"(/api/v1/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
    std::shared_ptr<Handle> h;
    try {
      h = find(req.matches[1]);
    } catch (const Error& e) {
      send_error(res, e);
      return;
    }
    res.set_header("Cache-Control", "no-cache");
    auto next = std::make_shared<std::size_t>(0);
    res.set_chunked_content_provider("text/event-stream", [this, h, next](std::size_t, httplib::DataSink& sink) {
      std::unique_lock lock(h->mutex);
      h->changed.wait_for(lock, std::chrono::milliseconds(200), [&] {
        return *next < h->flushed || stopping_.load() || !h->session.open();
      });
      std::string chunk;
      for (; *next < h->flushed; ++*next) {
        const json& e = h->session.events[*next];
        chunk += "id: " + std::to_string(*next) + "\nevent: " + e.at("event").get<std::string>() +
                 "\ndata: " + e.dump() + "\n\n";
      }
      bool finished = (!h->session.open() && *next >= h->flushed) || stopping_.load();
      lock.unlock();
      if (!chunk.empty() && !sink.write(chunk.data(), chunk.size())) return false;
      if (finished) {
        sink.done();
        return true;
      }
      return sink.is_writable();
    });
  });
}

}  // namespace affekt::service
