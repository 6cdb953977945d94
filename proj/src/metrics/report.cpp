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
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "affekt/error.hpp"
#include "affekt/metrics.hpp"

namespace affekt::metrics {

namespace {

using nlohmann::json;

struct Pending {
  SessionRow row;
  std::string file;
  std::size_t line = 0;
};

[[noreturn]] void corrupt(const std::string& file, std::size_t line, const std::string& what) {
  throw LocatedError(ErrorCode::CorruptLog, file, line, what);
}

void read_log(const std::filesystem::path& path, std::map<std::string, Pending>& sessions) {
  std::ifstream in(path, std::ios::binary);
  const std::string file = path.filename().string();
  if (!in) corrupt(file, 0, "cannot open log");
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    try {
      json e = json::parse(text);
      const std::string kind = e.at("event").get<std::string>();
      const std::string id = e.at("session_id").get<std::string>();
      e.at("t_ms").get<std::int64_t>();
      if (kind == "session_started") {
        if (sessions.contains(id)) corrupt(file, line_no, "session " + id + " started twice");
        Pending p;
        p.file = file;
        p.line = line_no;
        p.row.participant_id = e.at("participant_id").get<std::string>();
        p.row.group = parse_group(e.at("group").get<std::string>());
        p.row.session_number = e.at("session_number").get<int>();
        p.row.mode = parse_mode(e.at("mode").get<std::string>());
        sessions.emplace(id, std::move(p));
        continue;
      }
      auto it = sessions.find(id);
      if (it == sessions.end()) corrupt(file, line_no, "event for unknown session " + id);
      SessionRow& row = it->second.row;
      if (kind == "frame_batch") {
        for (const json& f : e.at("frames")) {
          int v = f.at("value").get<int>();
          if (v > 0) ++row.frames_positive;
          else if (v < 0) ++row.frames_negative;
          else ++row.frames_neutral;
        }
      } else if (kind == "turn") {
        row.word_counts.push_back(e.at("word_count").get<std::size_t>());
      } else if (kind == "face_scale") {
        int score = e.at("score").get<int>();
        const std::string phase = e.at("phase").get<std::string>();
        if (phase == "pre") row.face_pre = score;
        else if (phase == "post") row.face_post = score;
        else corrupt(file, line_no, "unknown face-scale phase '" + phase + "'");
      } else if (kind != "session_ended") {
        corrupt(file, line_no, "unknown event '" + kind + "'");
      }
    } catch (const json::exception& ex) {
      corrupt(file, line_no, ex.what());
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& ex) {
      corrupt(file, line_no, ex.what());
    }
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::optional<double> median(std::vector<int> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

std::string opt(const std::optional<double>& v, int digits) { return v ? fixed(*v, digits) : std::string{}; }

struct Block {
  Group group;
  Mode mode;
  std::vector<const SessionRow*> rows;
};

void write_line(std::ostringstream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

// Shared tail of session and summary rows: turns through face_delta.
std::vector<std::string> measures(const std::vector<std::vector<std::size_t>>& counts, std::size_t pos,
                                  std::size_t neu, std::size_t neg, std::optional<double> pre,
                                  std::optional<double> post, std::optional<double> delta) {
  std::vector<std::string> f;
  std::size_t turns = 0;
  for (const auto& c : counts) turns += c.size();
  f.push_back(std::to_string(turns));
  if (turns > 0) {
    WordCountStats wc = mean_word_count(counts);
    f.push_back(fixed(wc.mean, 4));
    f.push_back(fixed(wc.std, 4));
  } else {
    f.insert(f.end(), {"", ""});
  }
  std::size_t frames = pos + neu + neg;
  f.push_back(std::to_string(frames));
  if (frames > 0) {
    std::vector<int> values;
    values.insert(values.end(), pos, 1);
    values.insert(values.end(), neu, 0);
    values.insert(values.end(), neg, -1);
    EmotionPercentages pct = session_emotion_percentages(values);
    f.push_back(fixed(pct.positive, 3));
    f.push_back(fixed(pct.neutral, 3));
    f.push_back(fixed(pct.negative, 3));
  } else {
    f.insert(f.end(), {"", "", ""});
  }
  f.push_back(opt(pre, 1));
  f.push_back(opt(post, 1));
  f.push_back(opt(delta, 1));
  return f;
}

}  // namespace

std::vector<SessionRow> read_session_logs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, Pending> sessions;
  for (const auto& f : files) read_log(f, sessions);

  std::vector<SessionRow> rows;
  for (auto& [id, p] : sessions) rows.push_back(std::move(p.row));
  std::stable_sort(rows.begin(), rows.end(), [](const SessionRow& a, const SessionRow& b) {
    return std::tie(a.participant_id, a.session_number) < std::tie(b.participant_id, b.session_number);
  });
  return rows;
}

std::string render_report(const std::vector<SessionRow>& rows) {
  std::ostringstream out;
  write_line(out, std::vector<std::string>(std::begin(kReportColumns), std::end(kReportColumns)));

  for (const SessionRow& r : rows) {
    std::vector<std::string> fields = {"session", r.participant_id, to_string(r.group),
                                       std::to_string(r.session_number), to_string(r.mode)};
    std::optional<double> pre, post, delta;
    if (r.face_pre) pre = *r.face_pre;
    if (r.face_post) post = *r.face_post;
    if (pre && post) delta = *post - *pre;
    auto tail = measures({r.word_counts}, r.frames_positive, r.frames_neutral, r.frames_negative, pre, post, delta);
    fields.insert(fields.end(), tail.begin(), tail.end());
    write_line(out, fields);
  }

  // Summary blocks in crossover-table order: each group's first condition first.
  std::vector<Block> blocks;
  for (Group g : {Group::G1, Group::G2}) {
    for (int first : {1, 4}) {
      Block b{g, crossover_schedule(g, first), {}};
      for (const SessionRow& r : rows) {
        if (r.group == b.group && r.mode == b.mode) b.rows.push_back(&r);
      }
      if (!b.rows.empty()) blocks.push_back(std::move(b));
    }
  }
  for (const Block& b : blocks) {
    std::vector<std::vector<std::size_t>> counts;
    std::size_t pos = 0, neu = 0, neg = 0;
    std::vector<int> pres, posts, deltas;
    for (const SessionRow* r : b.rows) {
      counts.push_back(r->word_counts);
      pos += r->frames_positive;
      neu += r->frames_neutral;
      neg += r->frames_negative;
      if (r->face_pre) pres.push_back(*r->face_pre);
      if (r->face_post) posts.push_back(*r->face_post);
      if (r->face_pre && r->face_post) deltas.push_back(*r->face_post - *r->face_pre);
    }
    std::vector<std::string> fields = {"summary", "", to_string(b.group), "", to_string(b.mode)};
    auto tail = measures(counts, pos, neu, neg, median(pres), median(posts), median(deltas));
    fields.insert(fields.end(), tail.begin(), tail.end());
    write_line(out, fields);
  }
  return out.str();
}

std::string export_report(const std::filesystem::path& logs_dir) {
  return render_report(read_session_logs(logs_dir));
}

}  // namespace affekt::metrics
