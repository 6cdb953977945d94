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

// Dialogue knowledge base: an AIML subset with two extensions, <robot> for
// media and answer options and <getsentiment> for emotion-dependent arms.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "affekt/text.hpp"

namespace affekt::markup {

struct TemplateNode;

// A template body is a sequence of nodes.
using Template = std::vector<TemplateNode>;

struct TextNode {
  std::string text;
  bool operator==(const TextNode&) const = default;
};

// 1-based index into the pattern wildcards.
struct StarNode {
  std::size_t index = 1;
  bool operator==(const StarNode&) const = default;
};

struct SraiNode {
  Template body;
  bool operator==(const SraiNode& other) const;
};

struct SetNode {
  std::string name;
  Template body;
  bool operator==(const SetNode& other) const;
};

struct GetNode {
  std::string name;
  bool operator==(const GetNode&) const = default;
};

struct MediaRef {
  enum class Kind { Image, Video };
  Kind kind = Kind::Image;
  std::string href;
  bool operator==(const MediaRef&) const = default;
};

struct RobotNode {
  std::vector<MediaRef> media;
  std::vector<std::string> options;
  bool operator==(const RobotNode&) const = default;
};

// <getsentiment>: one arm per emotion category plus the arm used when the
// engine runs without emotion.
struct EmotionBranchNode {
  Template positive;
  Template neutral;
  Template negative;
  Template fallback;
  bool operator==(const EmotionBranchNode& other) const;
};

struct TemplateNode {
  std::variant<TextNode, StarNode, SraiNode, SetNode, GetNode, RobotNode, EmotionBranchNode> value;
  bool operator==(const TemplateNode& other) const { return value == other.value; }
};

inline bool SraiNode::operator==(const SraiNode& other) const { return body == other.body; }
inline bool SetNode::operator==(const SetNode& other) const {
  return name == other.name && body == other.body;
}
inline bool EmotionBranchNode::operator==(const EmotionBranchNode& other) const {
  return positive == other.positive && neutral == other.neutral && negative == other.negative &&
         fallback == other.fallback;
}

inline constexpr std::string_view kStar = "*";
inline constexpr std::string_view kUnderscore = "_";

bool is_wildcard(std::string_view token);
std::size_t wildcard_count(const Tokens& pattern);

struct Category {
  std::string id;
  Tokens pattern;
  std::optional<Tokens> that;
  std::optional<Tokens> topic;
  Template body;
  std::string source;
  std::size_t line = 0;
};

// Structural equality: ignores id, source and line.
bool same_structure(const Category& a, const Category& b);

struct MarkupSource {
  std::string name;
  std::string text;
};

struct MatchResult {
  const Category* category = nullptr;
  std::vector<Tokens> captures;
  std::vector<Tokens> that_captures;
};

class KnowledgeBase {
 public:
  KnowledgeBase(const KnowledgeBase&) = delete;
  KnowledgeBase& operator=(const KnowledgeBase&) = delete;
  KnowledgeBase(KnowledgeBase&&) noexcept;
  KnowledgeBase& operator=(KnowledgeBase&&) noexcept;
  ~KnowledgeBase();

  static KnowledgeBase parse(std::span<const MarkupSource> sources);

  // Loads every *.aiml file in `dir` in lexicographic order.
  static KnowledgeBase load(const std::filesystem::path& dir);

  const std::vector<Category>& categories() const { return categories_; }
  const std::vector<std::string>& topics() const { return topics_; }
  const std::vector<std::string>& source_files() const { return sources_; }

  // Priority: literal > `_` > `*`, left to right, shorter wildcard spans first.
  // A category with a that-clause outranks one without; likewise for topics.
  std::optional<MatchResult> match(const Tokens& input, const Tokens* that = nullptr,
                                   const Tokens* topic = nullptr) const;

  // The reserved lowest-priority category (pattern `*`, no that, no topic).
  const Category& fallback() const;

  // Re-emits the knowledge base as one document per source file.
  std::vector<MarkupSource> serialize() const;

  struct Trie;

 private:
  KnowledgeBase();
  void build_index();

  std::vector<Category> categories_;
  std::vector<std::string> topics_;
  std::vector<std::string> sources_;
  std::size_t fallback_ = 0;
  std::unique_ptr<Trie> trie_;
};

inline constexpr std::string_view kFallbackReply =
    "I did not catch that. Could you say it another way?";
inline constexpr std::string_view kBuiltinSource = "<builtin>";

}  // namespace affekt::markup
