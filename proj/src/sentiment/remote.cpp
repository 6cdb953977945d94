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
#include <cmath>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "affekt/error.hpp"
#include "affekt/sentiment.hpp"

namespace affekt::sentiment {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::BackendUnavailable, "endpoint '" + url + "' is not an absolute URL");
  }
  std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

double analyze_remote(const std::string& endpoint, std::string_view text,
                      std::chrono::milliseconds timeout) {
  Endpoint ep = split_url(endpoint);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  nlohmann::json body = {{"text", std::string(text)}};
  auto res = client.Post(ep.path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::BackendUnavailable,
                "sentiment backend " + endpoint + ": " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::BackendUnavailable,
                "sentiment backend " + endpoint + " returned HTTP " + std::to_string(res->status));
  }

  double value = 0.0;
  try {
    value = nlohmann::json::parse(res->body).at("sentiment").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BackendUnavailable, "sentiment backend " + endpoint + ": bad response: " + e.what());
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::BackendUnavailable, "sentiment backend " + endpoint + ": non-finite value");
  }
  if (value < -1.0 || value > 1.0) {
    spdlog::warn("sentiment backend returned {} outside [-1, 1]; clamping", value);
    value = std::clamp(value, -1.0, 1.0);
  }
  return value;
}

RemoteAnalyzer::RemoteAnalyzer(std::string endpoint, std::shared_ptr<const Analyzer> fallback,
                               std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), fallback_(std::move(fallback)), timeout_(timeout) {}

double RemoteAnalyzer::analyze(std::string_view text) const {
  try {
    return analyze_remote(endpoint_, text, timeout_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BackendUnavailable || !fallback_) throw;
    spdlog::warn("{}; using lexicon fallback", e.what());
    return fallback_->analyze(text);
  }
}

}  // namespace affekt::sentiment
