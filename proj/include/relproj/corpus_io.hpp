// Copyright 2026 The relproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Readers and writers for the on-disk corpus formats.
//
//   source / target text   one sentence per line, tokens separated by spaces
//   alignment              one line per sentence, Pharaoh "i-j" pairs, 0-based
//   triples (JSONL)        {"sentence_id","arg1","rel","arg2"}
//   gold (JSONL)           {"sentence_id","valid","gold_rel"}
//   projected (JSONL)      {"sentence_id","arg1":{slot},"rel":{slot},"arg2":{slot}}
//                          slot = {"text","span":[start,end]|null,
//                                  "method":"phrase"|"fallback"|"none",
//                                  "bleu":number|null}
//
// All readers stream one record at a time. Text is passed through byte for
// byte; no Unicode normalization is applied.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relproj/core.hpp"

namespace relproj {

inline constexpr const char* kFormatVersion = "1";

struct ParallelRecord {
  std::string sentence_id;
  Sentence source;
  Sentence target;
  AlignmentSet alignment;

  bool operator==(const ParallelRecord&) const = default;
};

namespace detail {

inline std::unique_ptr<std::istream> OpenInput(const std::string& path) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return in;
}

inline bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

inline bool ParseIndex(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace detail

/// Parses one Pharaoh alignment line ("0-0 1-2 ...") for sentences of the
/// given lengths.
inline AlignmentSet ParseAlignment(std::string_view line, std::size_t src_len,
                                   std::size_t tgt_len,
                                   std::optional<std::size_t> line_no = std::nullopt) {
  std::vector<Link> links;
  for (const Token& tok : SplitTokens(line)) {
    const auto dash = tok.find('-');
    Link l;
    if (dash == std::string::npos ||
        !detail::ParseIndex(std::string_view(tok).substr(0, dash), l.src) ||
        !detail::ParseIndex(std::string_view(tok).substr(dash + 1), l.tgt)) {
      throw Error(ErrorKind::kMalformedAlignment, "bad link token '" + tok + "'", line_no);
    }
    if (l.src >= src_len || l.tgt >= tgt_len) {
      throw Error(ErrorKind::kOutOfRangeLink,
                  "link " + tok + " out of range for " + std::to_string(src_len) +
                      "x" + std::to_string(tgt_len) + " sentence pair",
                  line_no);
    }
    links.push_back(l);
  }
  return AlignmentSet(src_len, tgt_len, std::move(links));
}

inline std::string FormatAlignment(const AlignmentSet& a) {
  std::string out;
  for (const Link& l : a.links()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.src) + "-" + std::to_string(l.tgt);
  }
  return out;
}

struct ParallelReaderOptions {
  // Source lines carry "id<TAB>tokens" instead of bare tokens.
  bool id_column = false;
};

/// Reads line-aligned source, target and alignment files. Sentence ids are
/// 0-based line numbers unless the source file carries an id column.
class ParallelReader {
 public:
  ParallelReader(const std::string& source_path, const std::string& target_path,
                 const std::string& alignment_path, ParallelReaderOptions opts = {})
      : src_(detail::OpenInput(source_path)),
        tgt_(detail::OpenInput(target_path)),
        align_(detail::OpenInput(alignment_path)),
        opts_(opts) {}

  ParallelReader(std::unique_ptr<std::istream> source, std::unique_ptr<std::istream> target,
                 std::unique_ptr<std::istream> alignment, ParallelReaderOptions opts = {})
      : src_(std::move(source)), tgt_(std::move(target)), align_(std::move(alignment)),
        opts_(opts) {}

  std::optional<ParallelRecord> Next() {
    std::string s_line, t_line, a_line;
    const bool has_s = detail::ReadLine(*src_, s_line);
    const bool has_t = detail::ReadLine(*tgt_, t_line);
    const bool has_a = detail::ReadLine(*align_, a_line);
    if (!has_s && !has_t && !has_a) return std::nullopt;
    const std::size_t line_no = ++lines_;
    if (!has_s || !has_t || !has_a) {
      throw Error(ErrorKind::kLineCountMismatch,
                  std::string("input ends early in the ") +
                      (!has_s ? "source" : !has_t ? "target" : "alignment") + " file",
                  line_no);
    }

    ParallelRecord rec;
    std::string_view text = s_line;
    if (opts_.id_column) {
      const auto tab = s_line.find('\t');
      if (tab == std::string::npos || tab == 0) {
        throw Error(ErrorKind::kMalformedRecord, "expected 'id<TAB>tokens'", line_no);
      }
      rec.sentence_id = s_line.substr(0, tab);
      text = std::string_view(s_line).substr(tab + 1);
    } else {
      rec.sentence_id = std::to_string(line_no - 1);
    }
    rec.source = {rec.sentence_id, SplitTokens(text)};
    rec.target = {rec.sentence_id, SplitTokens(t_line)};
    rec.alignment = ParseAlignment(a_line, rec.source.size(), rec.target.size(), line_no);
    return rec;
  }

  std::size_t line() const { return lines_; }

 private:
  std::unique_ptr<std::istream> src_;
  std::unique_ptr<std::istream> tgt_;
  std::unique_ptr<std::istream> align_;
  ParallelReaderOptions opts_;
  std::size_t lines_ = 0;
};

// ---------------------------------------------------------------------------
// JSONL records

namespace detail {

inline nlohmann::json ParseJsonLine(const std::string& line, std::size_t line_no) {
  try {
    auto j = nlohmann::json::parse(line);
    if (!j.is_object()) {
      throw Error(ErrorKind::kMalformedRecord, "expected a JSON object", line_no);
    }
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kMalformedRecord, e.what(), line_no);
  }
}

inline std::string StringField(const nlohmann::json& j, const char* name,
                               std::size_t line_no) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorKind::kMalformedRecord,
                std::string("missing or non-string field '") + name + "'", line_no);
  }
  return it->get<std::string>();
}

inline Tokens PhraseField(const nlohmann::json& j, const char* name, std::size_t line_no) {
  Tokens tokens = SplitTokens(StringField(j, name, line_no));
  if (tokens.empty()) {
    throw Error(ErrorKind::kEmptyField, std::string("field '") + name + "' is empty",
                line_no);
  }
  return tokens;
}

}  // namespace detail

inline RelationTriple ParseTriple(const std::string& line, std::size_t line_no = 1) {
  const auto j = detail::ParseJsonLine(line, line_no);
  RelationTriple t;
  t.sentence_id = detail::StringField(j, "sentence_id", line_no);
  t.arg1 = detail::PhraseField(j, "arg1", line_no);
  t.rel = detail::PhraseField(j, "rel", line_no);
  t.arg2 = detail::PhraseField(j, "arg2", line_no);
  return t;
}

inline GoldAnnotation ParseGold(const std::string& line, std::size_t line_no = 1) {
  const auto j = detail::ParseJsonLine(line, line_no);
  GoldAnnotation g;
  g.sentence_id = detail::StringField(j, "sentence_id", line_no);
  auto valid = j.find("valid");
  if (valid == j.end() || !valid->is_boolean()) {
    throw Error(ErrorKind::kMalformedRecord, "missing or non-boolean field 'valid'", line_no);
  }
  g.valid = valid->get<bool>();
  g.gold_rel = SplitTokens(detail::StringField(j, "gold_rel", line_no));
  if (g.valid && g.gold_rel.empty()) {
    throw Error(ErrorKind::kInvalidAnnotation, "valid annotation with empty gold_rel",
                line_no);
  }
  if (!g.valid && !g.gold_rel.empty()) {
    throw Error(ErrorKind::kInvalidAnnotation, "invalid annotation with non-empty gold_rel",
                line_no);
  }
  return g;
}

inline const char* MethodName(const ProjectedSlot& slot) {
  if (!slot) return "none";
  return slot->method == ProjectionMethod::kPhraseMatch ? "phrase" : "fallback";
}

inline nlohmann::ordered_json SlotToJson(const ProjectedSlot& slot) {
  nlohmann::ordered_json j;
  j["text"] = slot ? JoinTokens(slot->tokens) : std::string();
  if (slot && slot->source_span) {
    j["span"] = {slot->source_span->start, slot->source_span->end};
  } else {
    j["span"] = nullptr;
  }
  j["method"] = MethodName(slot);
  if (slot && slot->bleu_score) {
    j["bleu"] = *slot->bleu_score;
  } else {
    j["bleu"] = nullptr;
  }
  return j;
}

inline std::string FormatProjected(const ProjectedRelation& r) {
  nlohmann::ordered_json j;
  j["sentence_id"] = r.sentence_id;
  j["arg1"] = SlotToJson(r.arg1);
  j["rel"] = SlotToJson(r.rel);
  j["arg2"] = SlotToJson(r.arg2);
  return j.dump();
}

/// Writes one newline-terminated JSON line per relation.
inline void WriteProjected(std::ostream& out, const ProjectedRelation& r) {
  out << FormatProjected(r) << '\n';
}

namespace detail {

inline ProjectedSlot SlotFromJson(const nlohmann::json& j, const char* name,
                                  std::size_t line_no) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_object()) {
    throw Error(ErrorKind::kMalformedRecord, std::string("missing slot '") + name + "'",
                line_no);
  }
  const auto& slot = *it;
  const std::string method = StringField(slot, "method", line_no);
  const Tokens tokens = SplitTokens(StringField(slot, "text", line_no));
  if (method == "none") {
    if (!tokens.empty()) {
      throw Error(ErrorKind::kMalformedRecord, "unprojected slot with text", line_no);
    }
    return std::nullopt;
  }
  ProjectedPhrase p;
  if (method == "phrase") {
    p.method = ProjectionMethod::kPhraseMatch;
  } else if (method == "fallback") {
    p.method = ProjectionMethod::kWordAlignFallback;
  } else {
    throw Error(ErrorKind::kMalformedRecord, "unknown method '" + method + "'", line_no);
  }
  if (tokens.empty()) {
    throw Error(ErrorKind::kEmptyField, std::string("slot '") + name + "' text is empty",
                line_no);
  }
  p.tokens = tokens;
  auto span = slot.find("span");
  if (span != slot.end() && !span->is_null()) {
    if (!span->is_array() || span->size() != 2 || !(*span)[0].is_number_unsigned() ||
        !(*span)[1].is_number_unsigned()) {
      throw Error(ErrorKind::kMalformedRecord, "span must be [start, end]", line_no);
    }
    p.source_span = Span{(*span)[0].get<std::size_t>(), (*span)[1].get<std::size_t>()};
  }
  auto bleu = slot.find("bleu");
  if (bleu != slot.end() && !bleu->is_null()) {
    if (!bleu->is_number()) {
      throw Error(ErrorKind::kMalformedRecord, "bleu must be a number", line_no);
    }
    p.bleu_score = bleu->get<double>();
  }
  if (p.method == ProjectionMethod::kPhraseMatch && (!p.source_span || !p.bleu_score)) {
    throw Error(ErrorKind::kMalformedRecord, "phrase slot needs span and bleu", line_no);
  }
  return p;
}

}  // namespace detail

inline ProjectedRelation ParseProjected(const std::string& line, std::size_t line_no = 1) {
  const auto j = detail::ParseJsonLine(line, line_no);
  ProjectedRelation r;
  r.sentence_id = detail::StringField(j, "sentence_id", line_no);
  r.arg1 = detail::SlotFromJson(j, "arg1", line_no);
  r.rel = detail::SlotFromJson(j, "rel", line_no);
  r.arg2 = detail::SlotFromJson(j, "arg2", line_no);
  return r;
}

/// Streams records of one JSONL file; blank lines are skipped.
template <typename Record, Record (*Parse)(const std::string&, std::size_t)>
class JsonlReader {
 public:
  explicit JsonlReader(const std::string& path) : in_(detail::OpenInput(path)) {}
  explicit JsonlReader(std::unique_ptr<std::istream> in) : in_(std::move(in)) {}

  std::optional<Record> Next() {
    std::string line;
    while (detail::ReadLine(*in_, line)) {
      ++lines_;
      if (detail::IsBlank(line)) continue;
      return Parse(line, lines_);
    }
    return std::nullopt;
  }

  std::size_t line() const { return lines_; }

 private:
  std::unique_ptr<std::istream> in_;
  std::size_t lines_ = 0;
};

using TripleReader = JsonlReader<RelationTriple, &ParseTriple>;
using GoldReader = JsonlReader<GoldAnnotation, &ParseGold>;
using ProjectedReader = JsonlReader<ProjectedRelation, &ParseProjected>;

template <typename Reader>
auto ReadAll(Reader&& reader) {
  std::vector<typename decltype(reader.Next())::value_type> out;
  while (auto rec = reader.Next()) out.push_back(std::move(*rec));
  return out;
}

}  // namespace relproj
