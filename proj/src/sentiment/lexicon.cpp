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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "affekt/error.hpp"
#include "affekt/sentiment.hpp"
#include "affekt/text.hpp"

namespace affekt::sentiment {

namespace {

enum class Section { Scores, Negators, Intensifiers };

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ')) s.remove_prefix(1);
  return s;
}

double parse_number(std::string_view raw, const std::string& name, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (raw.empty() || ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(value)) {
    throw LocatedError(ErrorCode::ParseError, name, line, "bad number '" + std::string(raw) + "'");
  }
  return value;
}

}  // namespace

Lexicon read_lexicon(std::istream& in, const std::string& name) {
  Lexicon lexicon;
  Section section = Section::Scores;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == "#negators") section = Section::Negators;
      else if (line == "#intensifiers") section = Section::Intensifiers;
      else if (line == "#scores") section = Section::Scores;
      else if (line.size() == 1 || line[1] == ' ') continue;
      else throw LocatedError(ErrorCode::ParseError, name, line_no, "unknown section '" + std::string(line) + "'");
      continue;
    }

    std::size_t tab = line.find('\t');
    std::string token = lower(strip(line.substr(0, tab)));
    if (token.empty() || token.find_first_of(" \t") != std::string::npos) {
      throw LocatedError(ErrorCode::ParseError, name, line_no, "bad token");
    }
    auto duplicate = [&] {
      throw LocatedError(ErrorCode::DuplicateToken, name, line_no, "duplicate token '" + token + "'");
    };

    if (section == Section::Negators) {
      if (tab != std::string_view::npos) {
        throw LocatedError(ErrorCode::ParseError, name, line_no, "negator rows carry no value");
      }
      if (!lexicon.negators.insert(token).second) duplicate();
      continue;
    }
    if (tab == std::string_view::npos) {
      throw LocatedError(ErrorCode::ParseError, name, line_no, "expected token<TAB>value");
    }
    double value = parse_number(strip(line.substr(tab + 1)), name, line_no);
    if (section == Section::Scores) {
      if (std::abs(value) > kMaxTokenScore) {
        throw LocatedError(ErrorCode::ParseError, name, line_no, "score outside [-4, 4]");
      }
      if (!lexicon.entries.emplace(token, value).second) duplicate();
    } else {
      if (value <= 0.0) {
        throw LocatedError(ErrorCode::ParseError, name, line_no, "multiplier must be positive");
      }
      if (!lexicon.intensifiers.emplace(token, value).second) duplicate();
    }
  }
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LocatedError(ErrorCode::ParseError, path.string(), 0, "cannot open lexicon");
  return read_lexicon(in, path.string());
}

double LexiconAnalyzer::sentence_score(const std::vector<std::string>& tokens) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto entry = lexicon_.entries.find(tokens[i]);
    if (entry == lexicon_.entries.end()) continue;
    double score = entry->second;
    std::size_t from = i >= kNegationWindow ? i - kNegationWindow : 0;
    for (std::size_t j = from; j < i; ++j) {
      if (lexicon_.negators.contains(tokens[j])) {
        score *= kNegationFactor;
        break;
      }
    }
    if (i > 0) {
      auto boost = lexicon_.intensifiers.find(tokens[i - 1]);
      if (boost != lexicon_.intensifiers.end()) score *= boost->second;
    }
    sum += score;
  }
  return std::tanh(sum / kMaxTokenScore);
}

double LexiconAnalyzer::analyze(std::string_view text) const {
  auto sentences = segment_sentences(text, Case::Lower);
  if (sentences.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : sentences) total += sentence_score(s);
  return total / static_cast<double>(sentences.size());
}

}  // namespace affekt::sentiment
