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

#include <map>

#include "affekt/markup.hpp"

namespace affekt::markup {

// Pattern index in the classic graphmaster layout. Each category becomes one
// path: pattern tokens, a that-marker, the that-clause, a topic-marker and the
// topic. An absent that-clause or topic is stored as an "any" edge that
// matches zero or more tokens and ranks below every other edge.
struct KnowledgeBase::Trie {
  struct Node {
    std::map<std::string, std::unique_ptr<Node>, std::less<>> words;
    std::unique_ptr<Node> underscore;
    std::unique_ptr<Node> star;
    std::unique_ptr<Node> any;
    // Doc-order index of the category ending here.
    std::optional<std::size_t> leaf;
  };
  Node root;
};

namespace {

using Trie = KnowledgeBase::Trie;
using TrieNode = Trie::Node;

enum class Segment { Input, That, Topic };

constexpr std::string_view kThatMarker = "\x1f<that>";
constexpr std::string_view kTopicMarker = "\x1f<topic>";

TrieNode* child(std::unique_ptr<TrieNode>& slot) {
  if (!slot) slot = std::make_unique<TrieNode>();
  return slot.get();
}

TrieNode* insert_tokens(TrieNode* node, const Tokens& tokens) {
  for (const std::string& t : tokens) {
    if (t == kStar) {
      node = child(node->star);
    } else if (t == kUnderscore) {
      node = child(node->underscore);
    } else {
      node = child(node->words[t]);
    }
  }
  return node;
}

TrieNode* insert_marker(TrieNode* node, std::string_view marker) {
  return child(node->words[std::string(marker)]);
}

struct Span {
  Segment segment;
  std::size_t begin;
  std::size_t end;
};

class Search {
 public:
  Search(const Tokens& input, const Tokens* that, const Tokens* topic) {
    path_ = input;
    that_at_ = path_.size();
    path_.emplace_back(kThatMarker);
    if (that) path_.insert(path_.end(), that->begin(), that->end());
    topic_at_ = path_.size();
    path_.emplace_back(kTopicMarker);
    if (topic) path_.insert(path_.end(), topic->begin(), topic->end());
  }

  std::optional<std::size_t> run(const TrieNode& root) { return visit(root, 0); }

  std::vector<Tokens> captures(Segment segment) const {
    std::vector<Tokens> out;
    for (const Span& s : spans_) {
      if (s.segment != segment) continue;
      out.emplace_back(path_.begin() + static_cast<std::ptrdiff_t>(s.begin),
                       path_.begin() + static_cast<std::ptrdiff_t>(s.end));
    }
    return out;
  }

 private:
  bool is_marker(std::size_t pos) const { return pos == that_at_ || pos == topic_at_; }

  Segment segment_at(std::size_t pos) const {
    return pos < that_at_ ? Segment::Input : pos < topic_at_ ? Segment::That : Segment::Topic;
  }

  // First marker at or after pos; wildcards never cross one.
  std::size_t limit(std::size_t pos) const {
    if (pos <= that_at_) return that_at_;
    if (pos <= topic_at_) return topic_at_;
    return path_.size();
  }

  std::optional<std::size_t> visit(const TrieNode& node, std::size_t pos) {
    if (pos == path_.size()) {
      if (node.leaf) return node.leaf;
      // A trailing "any" edge may still match zero tokens.
      return node.any ? visit(*node.any, pos) : std::nullopt;
    }

    if (is_marker(pos)) {
      auto it = node.words.find(path_[pos]);
      if (it != node.words.end()) {
        if (auto hit = visit(*it->second, pos + 1)) return hit;
      }
    } else if (path_[pos] != kThatMarker && path_[pos] != kTopicMarker) {
      auto it = node.words.find(path_[pos]);
      if (it != node.words.end()) {
        if (auto hit = visit(*it->second, pos + 1)) return hit;
      }
    }

    std::size_t end = limit(pos);
    for (const TrieNode* wild : {node.underscore.get(), node.star.get()}) {
      if (!wild) continue;
      for (std::size_t stop = pos + 1; stop <= end; ++stop) {
        spans_.push_back({segment_at(pos), pos, stop});
        if (auto hit = visit(*wild, stop)) return hit;
        spans_.pop_back();
      }
    }
    if (node.any) {
      for (std::size_t stop = pos; stop <= end; ++stop) {
        if (auto hit = visit(*node.any, stop)) return hit;
      }
    }
    return std::nullopt;
  }

  Tokens path_;
  std::size_t that_at_ = 0;
  std::size_t topic_at_ = 0;
  std::vector<Span> spans_;
};

}  // namespace

KnowledgeBase::KnowledgeBase() = default;
KnowledgeBase::KnowledgeBase(KnowledgeBase&&) noexcept = default;
KnowledgeBase& KnowledgeBase::operator=(KnowledgeBase&&) noexcept = default;
KnowledgeBase::~KnowledgeBase() = default;

void KnowledgeBase::build_index() {
  trie_ = std::make_unique<Trie>();
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    const Category& c = categories_[i];
    TrieNode* node = insert_tokens(&trie_->root, c.pattern);
    node = insert_marker(node, kThatMarker);
    node = c.that ? insert_tokens(node, *c.that) : child(node->any);
    node = insert_marker(node, kTopicMarker);
    node = c.topic ? insert_tokens(node, *c.topic) : child(node->any);
    // (pattern, that, topic) triples are unique, so each leaf is set once.
    if (!node->leaf) node->leaf = i;
  }
}

std::optional<MatchResult> KnowledgeBase::match(const Tokens& input, const Tokens* that,
                                                const Tokens* topic) const {
  Search search(input, that, topic);
  auto hit = search.run(trie_->root);
  if (!hit) return std::nullopt;
  MatchResult result;
  result.category = &categories_[*hit];
  result.captures = search.captures(Segment::Input);
  result.that_captures = search.captures(Segment::That);
  return result;
}

}  // namespace affekt::markup
