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

// Alignment-consistent phrase-pair extraction.

#pragma once

#include <optional>
#include <vector>

#include "relproj/core.hpp"

namespace relproj {

struct ExtractConfig {
  std::optional<std::size_t> max_src_len;  // unlimited when empty
  std::optional<std::size_t> max_tgt_len;
  // Let source spans grow over unaligned neighbouring tokens. When off,
  // both source endpoints must be aligned.
  bool include_unaligned_extensions = true;
};

/// No link may have exactly one endpoint inside the pair, and at least one
/// link must lie inside both spans.
inline bool IsConsistent(const PhrasePair& pair, const AlignmentSet& a) {
  bool covered = false;
  for (const Link& l : a.links()) {
    const bool in_src = pair.src.contains(l.src);
    const bool in_tgt = pair.tgt.contains(l.tgt);
    if (in_src != in_tgt) return false;
    covered = covered || in_src;
  }
  return covered;
}

/// Every consistent phrase pair of the alignment within the configured
/// limits, ordered by (tgt.start, tgt.end, src.start, src.end).
inline std::vector<PhrasePair> ExtractPhrases(const AlignmentSet& a,
                                              const ExtractConfig& cfg = {}) {
  if ((cfg.max_src_len && *cfg.max_src_len == 0) ||
      (cfg.max_tgt_len && *cfg.max_tgt_len == 0)) {
    throw Error(ErrorKind::kInvalidInput, "phrase length limits must be >= 1");
  }
  const std::size_t n_src = a.src_len();
  const std::size_t n_tgt = a.tgt_len();
  std::vector<std::vector<std::size_t>> src_of_tgt(n_tgt);
  std::vector<std::vector<std::size_t>> tgt_of_src(n_src);
  for (const Link& l : a.links()) {
    src_of_tgt[l.tgt].push_back(l.src);
    tgt_of_src[l.src].push_back(l.tgt);
  }
  auto unaligned = [&](std::size_t i) { return tgt_of_src[i].empty(); };
  const std::size_t src_cap = cfg.max_src_len.value_or(n_src);
  const std::size_t tgt_cap = cfg.max_tgt_len.value_or(n_tgt);

  std::vector<PhrasePair> out;
  for (std::size_t ts = 0; ts < n_tgt; ++ts) {
    std::size_t lo = n_src;  // min aligned source index
    std::size_t hi = 0;
    bool any = false;
    for (std::size_t te = ts; te < n_tgt && te - ts + 1 <= tgt_cap; ++te) {
      for (std::size_t i : src_of_tgt[te]) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
        any = true;
      }
      if (!any || hi - lo + 1 > src_cap) continue;

      bool consistent = true;
      for (std::size_t i = lo; i <= hi && consistent; ++i) {
        for (std::size_t j : tgt_of_src[i]) {
          if (j < ts || j > te) {
            consistent = false;
            break;
          }
        }
      }
      if (!consistent) continue;

      std::size_t first = lo;
      std::size_t last = hi;
      if (cfg.include_unaligned_extensions) {
        while (first > 0 && unaligned(first - 1)) --first;
        while (last + 1 < n_src && unaligned(last + 1)) ++last;
      }
      for (std::size_t ss = first; ss <= lo; ++ss) {
        for (std::size_t se = hi; se <= last; ++se) {
          if (se - ss + 1 > src_cap) break;
          out.push_back({Span{ss, se}, Span{ts, te}});
        }
      }
    }
  }
  return out;
}

inline std::vector<PhrasePair> ExtractPhrases(const Sentence& s,
                                              const Sentence& t,
                                              const AlignmentSet& a,
                                              const ExtractConfig& cfg = {}) {
  ValidateAlignment(a, s, t);
  return ExtractPhrases(a, cfg);
}

}  // namespace relproj
