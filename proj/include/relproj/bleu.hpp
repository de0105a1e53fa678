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

// Smoothed sentence-level BLEU between a single candidate and a single
// reference phrase.
//
// Modified n-gram precisions p_1..p_N are combined by geometric mean. p_1 is
// left unsmoothed, so a candidate with no unigram in common with the
// reference scores exactly 0. For n >= 2 add-one smoothing is applied:
//
//   p_n = (clipped_matches_n + 1) / (candidate_ngrams_n + 1)
//
// Orders for which the candidate has no n-gram at all are left out of the
// mean. The optional brevity penalty is exp(min(0, 1 - |ref| / |cand|)).

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "relproj/core.hpp"

namespace relproj {

enum class Smoothing { kAddOne };

struct BleuConfig {
  int max_order = 3;
  Smoothing smoothing = Smoothing::kAddOne;
  bool brevity_penalty = true;
  bool case_fold = false;
};

using NgramCounts = std::map<Tokens, std::size_t>;

/// All contiguous n-grams of `tokens` with multiplicity. n must be >= 1.
inline NgramCounts CountNgrams(const Tokens& tokens, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kInvalidInput, "n-gram order must be >= 1");
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                    tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

struct OrderStats {
  std::size_t matches = 0;   // clipped
  std::size_t possible = 0;  // candidate n-grams
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  double precision() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

struct BleuStats {
  std::vector<OrderStats> orders;  // only orders that entered the mean
  double geometric_mean = 0.0;
  double brevity_penalty = 1.0;
  double score = 0.0;
};

namespace detail {

template <typename T>
bool SameNgram(std::span<const T> a, std::size_t i, std::span<const T> b,
               std::size_t j, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a[i + k] == b[j + k])) return false;
  }
  return true;
}

// Clipped n-gram matches by direct comparison. Phrases are short, so the
// quadratic scan beats building hash maps.
template <typename T>
std::size_t ClippedMatches(std::span<const T> cand, std::span<const T> ref,
                           std::size_t n) {
  if (cand.size() < n || ref.size() < n) return 0;
  const std::size_t nc = cand.size() - n + 1;
  const std::size_t nr = ref.size() - n + 1;
  std::size_t total = 0;
  for (std::size_t p = 0; p < nc; ++p) {
    bool seen = false;
    for (std::size_t q = 0; q < p && !seen; ++q) {
      seen = SameNgram(cand, q, cand, p, n);
    }
    if (seen) continue;
    std::size_t in_cand = 0;
    for (std::size_t q = p; q < nc; ++q) in_cand += SameNgram(cand, q, cand, p, n);
    std::size_t in_ref = 0;
    for (std::size_t q = 0; q < nr; ++q) in_ref += SameNgram(ref, q, cand, p, n);
    total += std::min(in_cand, in_ref);
  }
  return total;
}

}  // namespace detail

/// BLEU over arbitrary comparable token types (strings, interned ids).
/// Case folding is the caller's job at this level.
template <typename T>
BleuStats ComputeBleu(std::span<const T> cand, std::span<const T> ref,
                      const BleuConfig& cfg) {
  if (cand.empty() || ref.empty()) {
    throw Error(ErrorKind::kEmptyInput, "BLEU needs non-empty candidate and reference");
  }
  if (cfg.max_order < 1) throw Error(ErrorKind::kInvalidInput, "max_order must be >= 1");

  BleuStats stats;
  const std::size_t max_order = static_cast<std::size_t>(cfg.max_order);
  for (std::size_t n = 1; n <= max_order && n <= cand.size(); ++n) {
    OrderStats o;
    o.possible = cand.size() - n + 1;
    o.matches = detail::ClippedMatches(cand, ref, n);
    if (n == 1) {
      o.numerator = o.matches;
      o.denominator = o.possible;
    } else {
      o.numerator = o.matches + 1;
      o.denominator = o.possible + 1;
    }
    stats.orders.push_back(o);
  }

  if (stats.orders.front().numerator == 0) {
    stats.geometric_mean = 0.0;
  } else {
    // Multiply the rational precisions exactly so that equal products give
    // bit-identical scores regardless of how they factor.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    bool overflow = false;
    for (const auto& o : stats.orders) {
      overflow = overflow || __builtin_mul_overflow(num, o.numerator, &num) ||
                 __builtin_mul_overflow(den, o.denominator, &den);
    }
    const double k = static_cast<double>(stats.orders.size());
    if (!overflow) {
      stats.geometric_mean =
          std::pow(static_cast<double>(num) / static_cast<double>(den), 1.0 / k);
    } else {
      double log_sum = 0.0;
      for (const auto& o : stats.orders) log_sum += std::log(o.precision());
      stats.geometric_mean = std::exp(log_sum / k);
    }
  }

  if (cfg.brevity_penalty && cand.size() < ref.size()) {
    const double ratio =
        static_cast<double>(ref.size()) / static_cast<double>(cand.size());
    stats.brevity_penalty = std::exp(1.0 - ratio);
  }
  stats.score = std::clamp(stats.geometric_mean * stats.brevity_penalty, 0.0, 1.0);
  return stats;
}

inline BleuStats BleuBreakdown(const Tokens& candidate, const Tokens& reference,
                               const BleuConfig& cfg = {}) {
  if (cfg.case_fold) {
    const Tokens c = FoldCase(candidate);
    const Tokens r = FoldCase(reference);
    return ComputeBleu<Token>(c, r, cfg);
  }
  return ComputeBleu<Token>(candidate, reference, cfg);
}

inline double SentenceBleu(const Tokens& candidate, const Tokens& reference,
                           const BleuConfig& cfg = {}) {
  return BleuBreakdown(candidate, reference, cfg).score;
}

}  // namespace relproj
