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

#include <filesystem>
#include <optional>
#include <string>

namespace affekt::tools {

struct ReplayOptions {
  std::filesystem::path kb_dir;
  std::filesystem::path trace;
  std::filesystem::path script;
  std::filesystem::path lexicon;
  std::filesystem::path log_dir = "logs";
  std::optional<std::string> mode;
  std::optional<std::string> group;
  std::optional<int> session_number;
  std::string participant = "R1";
  std::optional<int> face_pre;
  std::optional<int> face_post;
  // Drive an already running server instead of an embedded one.
  std::optional<std::string> server;
};

// Runs one scripted session through the REST API and prints the transcript
// as JSON Lines on stdout. Returns a process exit code.
int run_replay(const ReplayOptions& options);

}  // namespace affekt::tools
