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

// Domain types shared by every stage of the projection toolkit.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace relproj {

using Token = std::string;
using Tokens = std::vector<Token>;

enum class ErrorKind {
  kOutOfRangeLink,
  kLengthMismatch,
  kEmptyInput,
  kInvalidInput,
  kLineCountMismatch,
  kMalformedAlignment,
  kMalformedRecord,
  kEmptyField,
  kInvalidAnnotation,
  kJoinFailure,
  kIo,
};

inline const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kOutOfRangeLink: return "OutOfRangeLink";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kLineCountMismatch: return "LineCountMismatch";
    case ErrorKind::kMalformedAlignment: return "MalformedAlignment";
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kEmptyField: return "EmptyField";
    case ErrorKind::kInvalidAnnotation: return "InvalidAnnotation";
    case ErrorKind::kJoinFailure: return "JoinFailure";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

/// All library failures are reported through this exception. `line()` is the
/// 1-based input line the failure was detected on, when one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(Format(kind, what, line)), kind_(kind), line_(line) {}

  ErrorKind kind() const { return kind_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  static std::string Format(ErrorKind kind, const std::string& what,
                            std::optional<std::size_t> line) {
    std::string msg = ErrorKindName(kind);
    if (line) msg += " at line " + std::to_string(*line);
    msg += ": " + what;
    return msg;
  }

  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

/// Splits on runs of ASCII whitespace. Never yields empty tokens.
inline Tokens SplitTokens(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\r' || text[i] == '\n')) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' &&
           text[j] != '\r' && text[j] != '\n') {
      ++j;
    }
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string JoinTokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k) out += ' ';
    out += tokens[k];
  }
  return out;
}

inline bool IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
           c == '\f';
  });
}

/// ASCII lower-casing; bytes >= 0x80 pass through untouched.
inline Token FoldCase(std::string_view token) {
  Token out(token);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline Tokens FoldCase(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(FoldCase(t));
  return out;
}

struct Sentence {
  std::string id;
  Tokens tokens;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

/// Inclusive token range [start, end].
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  bool contains(std::size_t k) const { return start <= k && k <= end; }

  auto operator<=>(const Span&) const = default;
};

inline Tokens SliceTokens(const Tokens& tokens, Span span) {
  return Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(span.start),
                tokens.begin() + static_cast<std::ptrdiff_t>(span.end) + 1);
}

struct Link {
  std::size_t src = 0;
  std::size_t tgt = 0;

  auto operator<=>(const Link&) const = default;
};

/// Word alignment between a source and a target sentence. Links are kept
/// sorted and unique, so equality ignores the order links were added in.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  AlignmentSet(std::size_t src_len, std::size_t tgt_len,
               std::vector<Link> links = {})
      : links_(std::move(links)), src_len_(src_len), tgt_len_(tgt_len) {
    std::sort(links_.begin(), links_.end());
    links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
  }

  const std::vector<Link>& links() const { return links_; }
  std::size_t src_len() const { return src_len_; }
  std::size_t tgt_len() const { return tgt_len_; }
  bool empty() const { return links_.empty(); }

  bool operator==(const AlignmentSet&) const = default;

 private:
  std::vector<Link> links_;
  std::size_t src_len_ = 0;
  std::size_t tgt_len_ = 0;
};

struct PhrasePair {
  Span src;
  Span tgt;

  // Deterministic P order: target span first, then source span.
  friend bool operator<(const PhrasePair& a, const PhrasePair& b) {
    return std::tie(a.tgt.start, a.tgt.end, a.src.start, a.src.end) <
           std::tie(b.tgt.start, b.tgt.end, b.src.start, b.src.end);
  }
  bool operator==(const PhrasePair&) const = default;
};

struct RelationTriple {
  std::string sentence_id;
  Tokens arg1;
  Tokens rel;
  Tokens arg2;

  bool operator==(const RelationTriple&) const = default;
};

enum class ProjectionMethod { kPhraseMatch, kWordAlignFallback };

struct ProjectedPhrase {
  Tokens tokens;
  std::optional<Span> source_span;  // present iff the tokens are contiguous
  ProjectionMethod method = ProjectionMethod::kPhraseMatch;
  std::optional<double> bleu_score;  // PhraseMatch only

  bool operator==(const ProjectedPhrase&) const = default;
};

/// An empty slot marks a phrase that could not be projected at all.
using ProjectedSlot = std::optional<ProjectedPhrase>;

struct ProjectedRelation {
  std::string sentence_id;
  ProjectedSlot arg1;
  ProjectedSlot rel;
  ProjectedSlot arg2;

  bool operator==(const ProjectedRelation&) const = default;
};

struct GoldAnnotation {
  std::string sentence_id;
  bool valid = false;
  Tokens gold_rel;

  bool operator==(const GoldAnnotation&) const = default;
};

/// Checks that `a` was built for sentences of these lengths and that every
/// link is in range. Throws Error on the first violation.
inline void ValidateAlignment(const AlignmentSet& a, const Sentence& s,
                              const Sentence& t) {
  if (a.src_len() != s.size() || a.tgt_len() != t.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "alignment is " + std::to_string(a.src_len()) + "x" +
                    std::to_string(a.tgt_len()) + " but sentences are " +
                    std::to_string(s.size()) + "x" + std::to_string(t.size()));
  }
  for (const Link& l : a.links()) {
    if (l.src >= a.src_len() || l.tgt >= a.tgt_len()) {
      throw Error(ErrorKind::kOutOfRangeLink,
                  "link " + std::to_string(l.src) + "-" +
                      std::to_string(l.tgt) + " out of range");
    }
  }
}

}  // namespace relproj
