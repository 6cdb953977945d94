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
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "affekt/error.hpp"
#include "affekt/markup.hpp"
#include "xml_reader.hpp"

namespace affekt::markup {

bool is_wildcard(std::string_view token) { return token == kStar || token == kUnderscore; }

std::size_t wildcard_count(const Tokens& pattern) {
  return static_cast<std::size_t>(std::count_if(pattern.begin(), pattern.end(),
                                                [](const std::string& t) { return is_wildcard(t); }));
}

bool same_structure(const Category& a, const Category& b) {
  return a.pattern == b.pattern && a.that == b.that && a.topic == b.topic && a.body == b.body;
}

namespace {

using xml::Node;

[[noreturn]] void violation(const std::string& file, const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, file + ": " + path + ": " + what);
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

std::string trimmed(std::string_view s) {
  std::string c = collapse_whitespace(s);
  std::size_t b = c.find_first_not_of(' ');
  if (b == std::string::npos) return {};
  std::size_t e = c.find_last_not_of(' ');
  return c.substr(b, e - b + 1);
}

class Parser {
 public:
  explicit Parser(std::string file) : file_(std::move(file)) {}

  void document(const Node& root, std::vector<Category>& out, std::size_t& counter) {
    if (root.name != "aiml") violation(file_, "/" + root.name, "root element must be <aiml>");
    for (const auto& [key, _] : root.attributes) {
      if (key != "version" && key != "encoding") violation(file_, "/aiml", "unknown attribute '" + key + "'");
    }
    std::size_t index = 0;
    for (const Node& child : root.children) {
      std::string path = "/aiml/" + child.name + "[" + std::to_string(++index) + "]";
      if (child.kind == Node::Kind::Text) {
        if (!is_blank(child.text)) violation(file_, "/aiml", "stray text");
        --index;
        continue;
      }
      if (child.name == "category") {
        out.push_back(category(child, path, std::nullopt, counter));
      } else if (child.name == "topic") {
        const std::string* name = child.attribute("name");
        if (!name) violation(file_, path, "<topic> requires a name attribute");
        Tokens topic = normalize(*name);
        if (topic.empty()) violation(file_, path, "empty topic name");
        check_pattern_tokens(topic, path);
        std::size_t inner = 0;
        for (const Node& c : child.children) {
          if (c.kind == Node::Kind::Text) {
            if (!is_blank(c.text)) violation(file_, path, "stray text");
            continue;
          }
          std::string cpath = path + "/" + c.name + "[" + std::to_string(++inner) + "]";
          if (c.name != "category") violation(file_, cpath, "only <category> is allowed inside <topic>");
          out.push_back(category(c, cpath, topic, counter));
        }
      } else {
        violation(file_, path, "unknown element <" + child.name + ">");
      }
    }
  }

 private:
  void no_attributes(const Node& node, const std::string& path) {
    if (!node.attributes.empty()) {
      violation(file_, path, "unexpected attribute '" + node.attributes.front().first + "'");
    }
  }

  void only_attributes(const Node& node, const std::string& path,
                       std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : node.attributes) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        violation(file_, path, "unexpected attribute '" + key + "'");
      }
    }
  }

  std::string text_only(const Node& node, const std::string& path) {
    std::string text;
    for (const Node& c : node.children) {
      if (c.kind != Node::Kind::Text) violation(file_, path + "/" + c.name, "element not allowed here");
      text += c.text;
    }
    return text;
  }

  void check_pattern_tokens(const Tokens& tokens, const std::string& path) {
    for (const std::string& t : tokens) {
      if (t.size() > 1 && t.find('*') != std::string::npos) {
        violation(file_, path, "wildcard '*' must stand alone, got '" + t + "'");
      }
    }
  }

  Tokens pattern_like(const Node& node, const std::string& path) {
    no_attributes(node, path);
    Tokens tokens = normalize(text_only(node, path));
    if (tokens.empty()) violation(file_, path, "empty <" + node.name + ">");
    check_pattern_tokens(tokens, path);
    return tokens;
  }

  Category category(const Node& node, const std::string& path, const std::optional<Tokens>& topic,
                    std::size_t& counter) {
    no_attributes(node, path);
    Category cat;
    cat.topic = topic;
    cat.source = file_;
    cat.line = node.line;
    cat.id = file_ + "#" + std::to_string(++counter);
    bool has_pattern = false;
    bool has_template = false;
    for (const Node& c : node.children) {
      if (c.kind == Node::Kind::Text) {
        if (!is_blank(c.text)) violation(file_, path, "stray text in <category>");
        continue;
      }
      std::string cpath = path + "/" + c.name;
      if (c.name == "pattern") {
        if (has_pattern) violation(file_, cpath, "duplicate <pattern>");
        cat.pattern = pattern_like(c, cpath);
        has_pattern = true;
      } else if (c.name == "that") {
        if (cat.that) violation(file_, cpath, "duplicate <that>");
        cat.that = pattern_like(c, cpath);
      } else if (c.name == "template") {
        if (has_template) violation(file_, cpath, "duplicate <template>");
        no_attributes(c, cpath);
        cat.body = body(c, cpath);
        has_template = true;
      } else {
        violation(file_, cpath, "unknown element <" + c.name + "> in <category>");
      }
    }
    if (!has_pattern) violation(file_, path, "missing <pattern>");
    if (!has_template) violation(file_, path, "missing <template>");
    return cat;
  }

  Template body(const Node& node, const std::string& path) {
    Template out;
    for (const Node& c : node.children) {
      if (c.kind == Node::Kind::Text) {
        out.push_back({TextNode{collapse_whitespace(c.text)}});
        continue;
      }
      std::string cpath = path + "/" + c.name;
      if (c.name == "star") {
        only_attributes(c, cpath, {"index"});
        if (!c.children.empty()) violation(file_, cpath, "<star> must be empty");
        std::size_t index = 1;
        if (const std::string* raw = c.attribute("index")) {
          auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), index);
          if (ec != std::errc{} || ptr != raw->data() + raw->size() || index == 0) {
            violation(file_, cpath, "index must be a positive integer");
          }
        }
        out.push_back({StarNode{index}});
      } else if (c.name == "srai") {
        no_attributes(c, cpath);
        Template inner = body(c, cpath);
        if (inner.empty()) violation(file_, cpath, "empty <srai>");
        out.push_back({SraiNode{std::move(inner)}});
      } else if (c.name == "set") {
        only_attributes(c, cpath, {"name"});
        const std::string* name = c.attribute("name");
        if (!name || name->empty()) violation(file_, cpath, "<set> requires a name");
        out.push_back({SetNode{*name, body(c, cpath)}});
      } else if (c.name == "get") {
        only_attributes(c, cpath, {"name"});
        const std::string* name = c.attribute("name");
        if (!name || name->empty()) violation(file_, cpath, "<get> requires a name");
        if (!c.children.empty()) violation(file_, cpath, "<get> must be empty");
        out.push_back({GetNode{*name}});
      } else if (c.name == "robot") {
        out.push_back({robot(c, cpath)});
      } else if (c.name == "getsentiment") {
        out.push_back({branch(c, cpath)});
      } else {
        violation(file_, cpath, "unknown template element <" + c.name + ">");
      }
    }
    return out;
  }

  RobotNode robot(const Node& node, const std::string& path) {
    no_attributes(node, path);
    RobotNode robot;
    bool has_options = false;
    for (const Node& c : node.children) {
      if (c.kind == Node::Kind::Text) {
        if (!is_blank(c.text)) violation(file_, path, "stray text in <robot>");
        continue;
      }
      std::string cpath = path + "/" + c.name;
      if (c.name == "image" || c.name == "video") {
        only_attributes(c, cpath, {"href"});
        const std::string* href = c.attribute("href");
        if (!href || href->empty()) violation(file_, cpath, "missing href");
        if (!c.children.empty()) violation(file_, cpath, "media element must be empty");
        robot.media.push_back(
            {c.name == "image" ? MediaRef::Kind::Image : MediaRef::Kind::Video, *href});
      } else if (c.name == "options") {
        if (has_options) violation(file_, cpath, "duplicate <options>");
        has_options = true;
        no_attributes(c, cpath);
        std::set<Tokens> seen;
        for (const Node& o : c.children) {
          if (o.kind == Node::Kind::Text) {
            if (!is_blank(o.text)) violation(file_, cpath, "stray text in <options>");
            continue;
          }
          if (o.name != "option") violation(file_, cpath + "/" + o.name, "only <option> allowed");
          no_attributes(o, cpath + "/option");
          std::string option = trimmed(text_only(o, cpath + "/option"));
          Tokens key = normalize(option);
          if (key.empty()) violation(file_, cpath + "/option", "empty option");
          if (!seen.insert(key).second) violation(file_, cpath + "/option", "duplicate option '" + option + "'");
          robot.options.push_back(std::move(option));
        }
        if (robot.options.empty()) violation(file_, cpath, "<options> must not be empty");
      } else {
        violation(file_, cpath, "unknown element <" + c.name + "> in <robot>");
      }
    }
    return robot;
  }

  EmotionBranchNode branch(const Node& node, const std::string& path) {
    no_attributes(node, path);
    EmotionBranchNode out;
    bool seen[4] = {false, false, false, false};
    for (const Node& c : node.children) {
      if (c.kind == Node::Kind::Text) {
        if (!is_blank(c.text)) violation(file_, path, "stray text in <getsentiment>");
        continue;
      }
      std::string cpath = path + "/" + c.name;
      int slot = c.name == "positive" ? 0 : c.name == "neutral" ? 1 : c.name == "negative" ? 2
               : c.name == "default" ? 3 : -1;
      if (slot < 0) violation(file_, cpath, "unknown arm <" + c.name + ">");
      if (seen[slot]) violation(file_, cpath, "duplicate arm");
      seen[slot] = true;
      no_attributes(c, cpath);
      Template arm = body(c, cpath);
      switch (slot) {
        case 0: out.positive = std::move(arm); break;
        case 1: out.neutral = std::move(arm); break;
        case 2: out.negative = std::move(arm); break;
        default: out.fallback = std::move(arm); break;
      }
    }
    static constexpr const char* kArms[] = {"positive", "neutral", "negative", "default"};
    for (int i = 0; i < 4; ++i) {
      if (!seen[i]) violation(file_, path, std::string("missing <") + kArms[i] + "> arm");
    }
    return out;
  }

  std::string file_;
};

}  // namespace

KnowledgeBase KnowledgeBase::parse(std::span<const MarkupSource> sources) {
  KnowledgeBase kb;
  std::size_t counter = 0;
  for (const MarkupSource& source : sources) {
    xml::Node root = xml::parse(source.text, source.name);
    Parser(source.name).document(root, kb.categories_, counter);
    kb.sources_.push_back(source.name);
  }

  std::set<std::tuple<Tokens, std::optional<Tokens>, std::optional<Tokens>>> seen;
  for (const Category& c : kb.categories_) {
    if (!seen.emplace(c.pattern, c.that, c.topic).second) {
      throw Error(ErrorCode::DuplicateCategory,
                  c.source + ":" + std::to_string(c.line) + ": duplicate category for pattern '" +
                      join(c.pattern) + "'");
    }
    if (c.topic) {
      std::string name = join(*c.topic);
      if (std::find(kb.topics_.begin(), kb.topics_.end(), name) == kb.topics_.end()) {
        kb.topics_.push_back(std::move(name));
      }
    }
  }

  auto is_fallback = [](const Category& c) {
    return c.pattern == Tokens{std::string(kStar)} && !c.that && !c.topic;
  };
  auto it = std::find_if(kb.categories_.begin(), kb.categories_.end(), is_fallback);
  if (it == kb.categories_.end()) {
    Category fallback;
    fallback.id = std::string(kBuiltinSource) + "#fallback";
    fallback.pattern = {std::string(kStar)};
    fallback.body = {TemplateNode{TextNode{std::string(kFallbackReply)}}};
    fallback.source = std::string(kBuiltinSource);
    kb.categories_.push_back(std::move(fallback));
    kb.sources_.emplace_back(kBuiltinSource);
    kb.fallback_ = kb.categories_.size() - 1;
  } else {
    kb.fallback_ = static_cast<std::size_t>(it - kb.categories_.begin());
  }

  kb.build_index();
  return kb;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".aiml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<MarkupSource> sources;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LocatedError(ErrorCode::MalformedDocument, path.string(), 0, "cannot read file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    sources.push_back({path.filename().string(), buffer.str()});
  }
  return parse(sources);
}

const Category& KnowledgeBase::fallback() const { return categories_[fallback_]; }

namespace {

void write_body(std::ostringstream& out, const Template& body);

void write_node(std::ostringstream& out, const TemplateNode& node) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TextNode>) {
          out << xml::escape(n.text);
        } else if constexpr (std::is_same_v<T, StarNode>) {
          out << "<star index=\"" << n.index << "\"/>";
        } else if constexpr (std::is_same_v<T, SraiNode>) {
          out << "<srai>";
          write_body(out, n.body);
          out << "</srai>";
        } else if constexpr (std::is_same_v<T, SetNode>) {
          out << "<set name=\"" << xml::escape(n.name) << "\">";
          write_body(out, n.body);
          out << "</set>";
        } else if constexpr (std::is_same_v<T, GetNode>) {
          out << "<get name=\"" << xml::escape(n.name) << "\"/>";
        } else if constexpr (std::is_same_v<T, RobotNode>) {
          out << "<robot>";
          for (const MediaRef& m : n.media) {
            out << (m.kind == MediaRef::Kind::Image ? "<image" : "<video") << " href=\""
                << xml::escape(m.href) << "\"/>";
          }
          if (!n.options.empty()) {
            out << "<options>";
            for (const std::string& o : n.options) out << "<option>" << xml::escape(o) << "</option>";
            out << "</options>";
          }
          out << "</robot>";
        } else if constexpr (std::is_same_v<T, EmotionBranchNode>) {
          out << "<getsentiment><positive>";
          write_body(out, n.positive);
          out << "</positive><neutral>";
          write_body(out, n.neutral);
          out << "</neutral><negative>";
          write_body(out, n.negative);
          out << "</negative><default>";
          write_body(out, n.fallback);
          out << "</default></getsentiment>";
        }
      },
      node.value);
}

void write_body(std::ostringstream& out, const Template& body) {
  for (const TemplateNode& node : body) write_node(out, node);
}

void write_category(std::ostringstream& out, const Category& c, const char* indent) {
  out << indent << "<category>\n";
  out << indent << "  <pattern>" << xml::escape(join(c.pattern)) << "</pattern>\n";
  if (c.that) out << indent << "  <that>" << xml::escape(join(*c.that)) << "</that>\n";
  out << indent << "  <template>";
  write_body(out, c.body);
  out << "</template>\n";
  out << indent << "</category>\n";
}

}  // namespace

std::vector<MarkupSource> KnowledgeBase::serialize() const {
  std::vector<MarkupSource> docs;
  for (const std::string& source : sources_) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<aiml version=\"2.0\">\n";
    const std::optional<Tokens>* open_topic = nullptr;
    for (const Category& c : categories_) {
      if (c.source != source) continue;
      if (open_topic && *open_topic != c.topic) {
        out << "  </topic>\n";
        open_topic = nullptr;
      }
      if (c.topic && !open_topic) {
        out << "  <topic name=\"" << xml::escape(join(*c.topic)) << "\">\n";
        open_topic = &c.topic;
      }
      write_category(out, c, open_topic ? "    " : "  ");
    }
    if (open_topic) out << "  </topic>\n";
    out << "</aiml>\n";
    docs.push_back({source, out.str()});
  }
  return docs;
}

}  // namespace affekt::markup
