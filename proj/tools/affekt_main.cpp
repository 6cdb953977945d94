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

// affekt: serve the conversation engine, chat with it in a terminal, replay
// scripted sessions and build study reports from session logs.

#include <CLI11.hpp>
#include <csignal>
#include <pthread.h>
#include <thread>
#include <fstream>
#include <iostream>
#include <sstream>
#include <spdlog/spdlog.h>

#include "affekt/error.hpp"
#include "affekt/metrics.hpp"
#include "affekt/service.hpp"
#include "replay.hpp"

namespace {

using namespace affekt;

int serve(const std::optional<std::filesystem::path>& cli_config) {
  auto path = service::resolve_config_path(cli_config);
  if (!path) {
    std::cerr << "serve: no config (use --config or AFFEKT_CONFIG)\n";
    return 2;
  }
  service::ApiConfig config = service::load_config(*path);
  auto kb = std::make_shared<markup::KnowledgeBase>(markup::KnowledgeBase::load(config.kb_path));
  auto engine = std::make_shared<brain::Engine>(kb, service::make_analyzer(config),
                                                brain::EngineConfig{config.sensitivity, {}});
  // SIGINT/SIGTERM are taken by a waiter thread, so stop() never runs inside
  // a signal handler. The mask is set before any server thread exists.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Service server(engine, config.log_dir);
  int port = server.bind(config.host, config.port);
  spdlog::info("serving {} categories on http://{}:{}", kb->categories().size(), config.host, port);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // Wake the waiter in case run() ended on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  spdlog::info("stopped; logs in {}", config.log_dir.string());
  return 0;
}

void print_response(const brain::EngineResponse& r) {
  std::cout << "robot [" << brain::to_string(r.expression) << "]: " << r.reply << '\n';
  for (const auto& m : r.media) {
    std::cout << "  (" << (m.kind == markup::MediaRef::Kind::Image ? "image" : "video") << " " << m.href << ")\n";
  }
  if (r.options) {
    std::cout << "  options:";
    for (const auto& o : *r.options) std::cout << " [" << o << "]";
    std::cout << '\n';
  }
}

int chat(const std::filesystem::path& kb_dir, const std::string& emotion, const std::filesystem::path& lexicon) {
  auto kb = std::make_shared<markup::KnowledgeBase>(markup::KnowledgeBase::load(kb_dir));
  auto analyzer = std::make_shared<sentiment::LexiconAnalyzer>(sentiment::load_lexicon(lexicon));
  brain::Engine engine(kb, analyzer);
  bool on = metrics::parse_mode(emotion) == metrics::Mode::EmotionOn;
  auto started = engine.start_session("chat", on ? metrics::Group::G2 : metrics::Group::G1, 1);
  brain::Session& session = started.session;
  print_response(started.opening);
  engine.reply_delivered(session);
  std::cout << "(commands: /frames P_NEG P_NEU P_POS [COUNT], /state, /quit)\n";

  std::string line;
  std::int64_t t_ms = 0;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line == "/quit") break;
    if (line == "/state") {
      std::cout << brain::log::snapshot(session).dump(2) << '\n';
      continue;
    }
    if (line.rfind("/frames", 0) == 0) {
      std::istringstream in(line.substr(7));
      perception::ValenceFrame f;
      int count = 1;
      if (!(in >> f.p_neg >> f.p_neu >> f.p_pos)) {
        std::cout << "usage: /frames P_NEG P_NEU P_POS [COUNT]\n";
        continue;
      }
      in >> count;
      std::vector<perception::ValenceFrame> frames(static_cast<std::size_t>(std::max(count, 0)), f);
      for (auto& fr : frames) fr.t_ms = (t_ms += 100);
      try {
        engine.push_frames(session, frames);
        std::cout << "emotional state " << session.tracker.emotional_state() << '\n';
      } catch (const Error& e) {
        std::cout << e.what() << '\n';
      }
      continue;
    }
    auto r = engine.handle_utterance(session, line);
    const auto& turn = session.transcript.back();
    std::cout << "  sentiment " << turn.sentiment << ", state " << turn.emotional_state << ", final "
              << turn.final_emotion.value << " (" << perception::to_string(turn.final_emotion.category) << ")\n";
    print_response(r);
    engine.reply_delivered(session);
  }
  return 0;
}

int report(const std::filesystem::path& logs, const std::filesystem::path& out_path) {
  auto rows = metrics::read_session_logs(logs);
  std::string csv = metrics::render_report(rows);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "report: cannot write " << out_path << '\n';
    return 1;
  }
  out << csv;

  std::vector<double> pre, post;
  for (const auto& r : rows) {
    if (r.face_pre && r.face_post) {
      pre.push_back(*r.face_pre);
      post.push_back(*r.face_post);
    }
  }
  if (!pre.empty()) {
    try {
      auto w = metrics::wilcoxon_signed_rank(pre, post);
      std::cerr << "face-scale Wilcoxon signed-rank: n=" << w.n << " W+=" << w.w_plus << " W-=" << w.w_minus
                << " z=" << w.z << " p=" << w.p_two_sided
                << (w.method == metrics::WilcoxonResult::Method::Exact ? " (exact)" : " (normal approx)") << '\n';
    } catch (const Error& e) {
      std::cerr << "face-scale Wilcoxon: " << e.what() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affekt: emotion-adaptive conversation engine"};
  app.require_subcommand(1);

  std::optional<std::filesystem::path> config;
  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--config", config, "JSON config file (AFFEKT_CONFIG overrides)");

  std::filesystem::path kb_dir;
  std::filesystem::path lexicon = AFFEKT_DEFAULT_LEXICON;
  std::string emotion = "on";
  auto* chat_cmd = app.add_subcommand("chat", "Terminal conversation with the engine");
  chat_cmd->add_option("--kb", kb_dir, "Knowledge base directory")->required();
  chat_cmd->add_option("--emotion", emotion, "on|off")->check(CLI::IsMember({"on", "off"}));
  chat_cmd->add_option("--lexicon", lexicon, "Sentiment lexicon TSV");

  tools::ReplayOptions replay;
  replay.lexicon = AFFEKT_DEFAULT_LEXICON;
  auto* replay_cmd = app.add_subcommand("replay", "Run a scripted session through the REST API");
  replay_cmd->add_option("--kb", replay.kb_dir, "Knowledge base directory")->required();
  replay_cmd->add_option("--trace", replay.trace, "Frame trace (JSON Lines)")->required();
  replay_cmd->add_option("--script", replay.script, "Utterances, one per line")->required();
  replay_cmd->add_option("--mode", replay.mode, "on|off")->check(CLI::IsMember({"on", "off"}));
  replay_cmd->add_option("--participant", replay.participant, "Participant id");
  replay_cmd->add_option("--group", replay.group, "G1|G2");
  replay_cmd->add_option("--session", replay.session_number, "Session number 1..6");
  replay_cmd->add_option("--face-pre", replay.face_pre, "Pre-session face-scale 0..10");
  replay_cmd->add_option("--face-post", replay.face_post, "Post-session face-scale 0..10");
  replay_cmd->add_option("--lexicon", replay.lexicon, "Sentiment lexicon TSV");
  replay_cmd->add_option("--log-dir", replay.log_dir, "Session log directory");
  replay_cmd->add_option("--server", replay.server, "Use a running server, e.g. http://127.0.0.1:8080");

  std::filesystem::path logs;
  std::filesystem::path out = "report.csv";
  auto* report_cmd = app.add_subcommand("report", "Study table from session logs");
  report_cmd->add_option("--logs", logs, "Session log directory")->required();
  report_cmd->add_option("--out", out, "Output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(config);
    if (*chat_cmd) return chat(kb_dir, emotion, lexicon);
    if (*replay_cmd) return tools::run_replay(replay);
    if (*report_cmd) return report(logs, out);
  } catch (const std::exception& e) {
    std::cerr << "affekt: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
