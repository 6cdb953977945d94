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

// REST front end for the engine. JSON bodies, integer millisecond timestamps,
// snake_case enum values. Writes for one session are serialized through that
// session's lock; the session log is appended as each event is produced.

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "affekt/brain.hpp"
#include "affekt/error.hpp"

namespace httplib {
class Server;
}

namespace affekt::service {

struct ApiConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path kb_path;
  std::filesystem::path lexicon_path;
  // Unset means the lexicon backend.
  std::optional<std::string> remote_sentiment_url;
  fusion::SensitivityVector sensitivity = fusion::SensitivityVector::balanced();
  std::filesystem::path log_dir = "logs";
};

// JSON config file:
//   {"port": 8080, "kb_path": "...", "lexicon_path": "...",
//    "sentiment_backend": "lexicon" | {"remote": "http://host:port/path"},
//    "fusion": {"sensitivity": [0.5, 0.5]}, "log_dir": "..."}
// Relative paths resolve against the config file's directory.
// Throws InvalidConfig.
ApiConfig load_config(const std::filesystem::path& path);

// Config path from AFFEKT_CONFIG when set, otherwise `cli_path`.
std::optional<std::filesystem::path> resolve_config_path(const std::optional<std::filesystem::path>& cli_path);

std::shared_ptr<const sentiment::Analyzer> make_analyzer(const ApiConfig& config);

// HTTP status for an engine error.
int http_status(ErrorCode code);

class Service {
 public:
  Service(std::shared_ptr<brain::Engine> engine, std::filesystem::path log_dir);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or throws.
  int bind(const std::string& host, int port);
  // Serves until stop(). Blocking. Returns at once if stop() came first.
  void run();
  void stop();

  brain::Engine& engine() { return *engine_; }

 private:
  struct Handle {
    std::mutex mutex;
    std::condition_variable changed;
    brain::Session session;
    std::size_t flushed = 0;
    std::ofstream log;
  };

  void routes();
  std::shared_ptr<Handle> find(const std::string& id) const;
  void flush(Handle& handle);

  std::shared_ptr<brain::Engine> engine_;
  std::filesystem::path log_dir_;
  std::unique_ptr<httplib::Server> http_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Handle>> sessions_;
  std::atomic<bool> stopping_{false};
  std::mutex run_mutex_;
  bool listening_ = false;
};

}  // namespace affekt::service
