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

// Projection of English phrases onto the source sentence.
//
// A phrase p is matched against the target sides of the consistent phrase
// pairs P of the sentence. Among target phrases sharing at least one token
// type with p, the one with the highest BLEU(candidate = target phrase,
// reference = p) wins; the first in P order wins ties. The answer is the
// shortest source phrase paired with that target phrase. When no target
// phrase overlaps p, each word of p is mapped through the alignment instead,
// which can produce non-contiguous or empty results.

#pragma once

#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "relproj/bleu.hpp"
#include "relproj/core.hpp"
#include "relproj/phrase_extract.hpp"

namespace relproj {

struct ProjectionConfig {
  BleuConfig bleu;
  ExtractConfig extract;
};

/// Every occurrence of `phrase` as a contiguous run of `t`.
inline std::vector<Span> LocateInTarget(const Sentence& t, const Tokens& phrase) {
  std::vector<Span> out;
  if (phrase.empty() || phrase.size() > t.size()) return out;
  for (std::size_t i = 0; i + phrase.size() <= t.size(); ++i) {
    if (std::equal(phrase.begin(), phrase.end(),
                   t.tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
      out.push_back({i, i + phrase.size() - 1});
    }
  }
  return out;
}

/// Naive per-word projection. Each token of `phrase` claims the leftmost
/// unclaimed equal target token; the source tokens linked to the claimed
/// positions are returned in index order. Empty result when nothing links.
inline ProjectedSlot WordAlignmentProjection(const Sentence& s, const Sentence& t,
                                             const AlignmentSet& a,
                                             const Tokens& phrase,
                                             bool case_fold = false) {
  if (phrase.empty()) throw Error(ErrorKind::kEmptyInput, "phrase to project is empty");
  ValidateAlignment(a, s, t);

  const Tokens target = case_fold ? FoldCase(t.tokens) : t.tokens;
  const Tokens query = case_fold ? FoldCase(phrase) : phrase;
  std::vector<bool> claimed(target.size(), false);
  for (const Token& tok : query) {
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (!claimed[j] && target[j] == tok) {
        claimed[j] = true;
        break;
      }
    }
  }

  std::vector<bool> hit(s.size(), false);
  for (const Link& l : a.links()) {
    if (claimed[l.tgt]) hit[l.src] = true;
  }
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (hit[i]) indices.push_back(i);
  }
  if (indices.empty()) return std::nullopt;

  ProjectedPhrase out;
  out.method = ProjectionMethod::kWordAlignFallback;
  for (std::size_t i : indices) out.tokens.push_back(s.tokens[i]);
  if (indices.back() - indices.front() + 1 == indices.size()) {
    out.source_span = Span{indices.front(), indices.back()};
  }
  return out;
}

/// Holds the per-sentence state (phrase pairs, interned target tokens) so
/// several phrases of the same sentence share one extraction. The sentences
/// and alignment are held by reference and must outlive the projector.
class SentenceProjector {
 public:
  SentenceProjector(const Sentence& s, const Sentence& t, const AlignmentSet& a,
                    const ProjectionConfig& cfg = {})
      : s_(s), t_(t), a_(a), cfg_(cfg) {
    if (s.tokens.empty() || t.tokens.empty()) {
      throw Error(ErrorKind::kInvalidInput,
                  "sentence " + s.id + " has an empty side");
    }
    pairs_ = ExtractPhrases(s, t, a, cfg.extract);
    target_ids_.reserve(t.size());
    for (const Token& tok : t.tokens) target_ids_.push_back(Intern(tok, vocab_));
  }

  const std::vector<PhrasePair>& pairs() const { return pairs_; }

  ProjectedSlot Project(const Tokens& phrase) const {
    if (phrase.empty()) throw Error(ErrorKind::kEmptyInput, "phrase to project is empty");

    auto local = vocab_;
    std::vector<int> query;
    query.reserve(phrase.size());
    for (const Token& tok : phrase) query.push_back(Intern(tok, local));

    // in_query_prefix[k] = number of target positions < k whose type is in p.
    std::vector<std::size_t> in_query_prefix(target_ids_.size() + 1, 0);
    for (std::size_t j = 0; j < target_ids_.size(); ++j) {
      const bool in = std::find(query.begin(), query.end(), target_ids_[j]) != query.end();
      in_query_prefix[j + 1] = in_query_prefix[j] + (in ? 1 : 0);
    }

    const std::span<const int> target(target_ids_);
    double best_score = -std::numeric_limits<double>::infinity();
    std::optional<Span> best_tgt;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const Span tgt = pairs_[k].tgt;
      if (k > 0 && pairs_[k - 1].tgt == tgt) continue;  // scored already
      if (in_query_prefix[tgt.end + 1] == in_query_prefix[tgt.start]) continue;
      const double score =
          ComputeBleu<int>(target.subspan(tgt.start, tgt.length()), query, cfg_.bleu).score;
      if (score > best_score) {
        best_score = score;
        best_tgt = tgt;
      }
    }

    if (!best_tgt) {
      return WordAlignmentProjection(s_, t_, a_, phrase, cfg_.bleu.case_fold);
    }

    std::optional<Span> best_src;
    for (const PhrasePair& p : pairs_) {
      if (p.tgt != *best_tgt) continue;
      if (!best_src || p.src.length() < best_src->length()) best_src = p.src;
    }
    ProjectedPhrase out;
    out.tokens = SliceTokens(s_.tokens, *best_src);
    out.source_span = best_src;
    out.method = ProjectionMethod::kPhraseMatch;
    out.bleu_score = best_score;
    return out;
  }

  ProjectedRelation Project(const RelationTriple& triple) const {
    if (triple.sentence_id != s_.id) {
      throw Error(ErrorKind::kInvalidInput, "triple for sentence " + triple.sentence_id +
                                                " applied to sentence " + s_.id);
    }
    return {triple.sentence_id, Project(triple.arg1), Project(triple.rel),
            Project(triple.arg2)};
  }

 private:
  int Intern(const Token& tok, std::unordered_map<Token, int>& vocab) const {
    const Token key = cfg_.bleu.case_fold ? FoldCase(tok) : tok;
    return vocab.try_emplace(key, static_cast<int>(vocab.size())).first->second;
  }

  const Sentence& s_;
  const Sentence& t_;
  const AlignmentSet& a_;
  ProjectionConfig cfg_;
  std::vector<PhrasePair> pairs_;
  std::unordered_map<Token, int> vocab_;
  std::vector<int> target_ids_;
};

inline ProjectedSlot ProjectPhrase(const Sentence& s, const Sentence& t,
                                   const AlignmentSet& a, const Tokens& phrase,
                                   const ProjectionConfig& cfg = {}) {
  return SentenceProjector(s, t, a, cfg).Project(phrase);
}

inline ProjectedRelation ProjectRelation(const RelationTriple& triple,
                                         const Sentence& s, const Sentence& t,
                                         const AlignmentSet& a,
                                         const ProjectionConfig& cfg = {}) {
  return SentenceProjector(s, t, a, cfg).Project(triple);
}

}  // namespace relproj
