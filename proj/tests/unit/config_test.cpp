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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "affekt/error.hpp"
#include "affekt/service.hpp"
#include "support/oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace affekt;
using namespace affekt::service;

class ConfigTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("affekt-config-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "kb");
    fs::copy_file(oracle::data_dir() + "/lexicon/affekt.tsv", dir_ / "lex.tsv");
    ::unsetenv("AFFEKT_CONFIG");
  }
  void TearDown() override {
    ::unsetenv("AFFEKT_CONFIG");
    fs::remove_all(dir_);
  }

  fs::path write(const std::string& body, const std::string& name = "affekt.json") {
    std::ofstream(dir_ / name) << body;
    return dir_ / name;
  }

  ErrorCode load_error(const std::string& body) {
    try {
      load_config(write(body));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NoMatch;
  }

  fs::path dir_;
};

TEST_F(ConfigTest, DefaultsAndRelativePaths) {
  ApiConfig c = load_config(write(R"({"kb_path": "kb", "lexicon_path": "lex.tsv"})"));
  EXPECT_EQ(c.host, "127.0.0.1");
  EXPECT_EQ(c.port, 8080);
  EXPECT_EQ(c.kb_path, dir_ / "kb");
  EXPECT_EQ(c.lexicon_path, dir_ / "lex.tsv");
  EXPECT_EQ(c.log_dir, dir_ / "logs");
  EXPECT_FALSE(c.remote_sentiment_url);
  EXPECT_EQ(c.sensitivity.weights(), (std::vector<double>{0.5, 0.5}));
}

TEST_F(ConfigTest, AllKeys) {
  ApiConfig c = load_config(write(R"({"host": "0.0.0.0", "port": 9001, "kb_path": "kb",
      "lexicon_path": "lex.tsv", "log_dir": "/tmp/x",
      "sentiment_backend": {"remote": "http://127.0.0.1:9/score"},
      "fusion": {"sensitivity": [0.8, 0.2]}})"));
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9001);
  EXPECT_EQ(c.log_dir, fs::path("/tmp/x"));
  EXPECT_EQ(c.remote_sentiment_url, "http://127.0.0.1:9/score");
  EXPECT_EQ(c.sensitivity.weights(), (std::vector<double>{0.8, 0.2}));
}

TEST_F(ConfigTest, Invalid) {
  EXPECT_EQ(load_error("{"), ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"lexicon_path": "lex.tsv"})"), ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "missing", "lexicon_path": "lex.tsv"})"), ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "kb", "lexicon_path": "nope.tsv"})"), ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "kb", "lexicon_path": "lex.tsv", "port": 70000})"), ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "kb", "lexicon_path": "lex.tsv", "sentiment_backend": "vader"})"),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "kb", "lexicon_path": "lex.tsv", "fusion": {"sensitivity": [0.7, 0.7]}})"),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(load_error(R"({"kb_path": "kb", "lexicon_path": "lex.tsv", "fusion": {"sensitivity": [1, 0, 0]}})"),
            ErrorCode::InvalidConfig);
  try {
    load_config(dir_ / "absent.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST_F(ConfigTest, EnvironmentOverridesCommandLine) {
  EXPECT_EQ(resolve_config_path(fs::path("cli.json")), fs::path("cli.json"));
  EXPECT_FALSE(resolve_config_path(std::nullopt));
  ::setenv("AFFEKT_CONFIG", "/etc/env.json", 1);
  EXPECT_EQ(resolve_config_path(fs::path("cli.json")), fs::path("/etc/env.json"));
  EXPECT_EQ(resolve_config_path(std::nullopt), fs::path("/etc/env.json"));
}

TEST_F(ConfigTest, AnalyzerBackend) {
  ApiConfig c = load_config(write(R"({"kb_path": "kb", "lexicon_path": "lex.tsv"})"));
  auto local = make_analyzer(c);
  EXPECT_NE(dynamic_cast<const sentiment::LexiconAnalyzer*>(local.get()), nullptr);
  EXPECT_GT(local->analyze("I am very happy"), 0.1);
  c.remote_sentiment_url = "http://127.0.0.1:1/score";
  auto remote = make_analyzer(c);
  EXPECT_NE(dynamic_cast<const sentiment::RemoteAnalyzer*>(remote.get()), nullptr);
  // Nothing listens there, so the lexicon answers.
  EXPECT_GT(remote->analyze("I am very happy"), 0.1);
}

TEST(HttpStatus, Mapping) {
  EXPECT_EQ(http_status(ErrorCode::UnknownSession), 404);
  EXPECT_EQ(http_status(ErrorCode::SessionClosed), 404);
  EXPECT_EQ(http_status(ErrorCode::NotUserTurn), 409);
  EXPECT_EQ(http_status(ErrorCode::DuplicatePhase), 409);
  EXPECT_EQ(http_status(ErrorCode::PhaseOrder), 409);
  EXPECT_EQ(http_status(ErrorCode::InvalidFrame), 422);
  EXPECT_EQ(http_status(ErrorCode::OutOfRange), 422);
  EXPECT_EQ(http_status(ErrorCode::BackendUnavailable), 503);
  EXPECT_EQ(http_status(ErrorCode::NoMatch), 500);
}

}  // namespace
