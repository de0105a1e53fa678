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

// Scoring projected relations against human annotations, and agreement
// between two annotators.

#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relproj/bleu.hpp"
#include "relproj/core.hpp"

namespace relproj {

inline constexpr std::size_t kNumBleuBins = 10;

/// Bin k holds scores in [k/10, (k+1)/10); a perfect 1.0 goes to the top bin.
inline std::size_t BleuBin(double score) {
  const double scaled = std::floor(score * static_cast<double>(kNumBleuBins));
  if (scaled <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(scaled), kNumBleuBins - 1);
}

struct EvalReport {
  std::size_t n_total = 0;
  std::size_t n_valid = 0;
  std::size_t n_empty_auto = 0;  // valid items whose rel was unprojectable
  std::optional<double> pct_valid;
  std::optional<double> mean_bleu;
  std::array<std::size_t, kNumBleuBins> bins{};
  std::optional<double> avg_len_gold;
  std::optional<double> avg_len_auto;

  bool operator==(const EvalReport&) const = default;
};

struct AgreementReport {
  std::size_t n_pairs = 0;
  std::size_t n_both_valid = 0;
  std::optional<double> perfect_rate;
  std::optional<double> mean_pairwise_bleu;

  bool operator==(const AgreementReport&) const = default;
};

namespace detail {

template <typename Record>
std::map<std::string, const Record*> IndexById(const std::vector<Record>& records,
                                               const char* what) {
  std::map<std::string, const Record*> index;
  for (const auto& r : records) {
    if (!index.emplace(r.sentence_id, &r).second) {
      throw Error(ErrorKind::kJoinFailure,
                  std::string("duplicate sentence_id '") + r.sentence_id + "' in " + what);
    }
  }
  return index;
}

template <typename A, typename B>
void RequireSameIds(const std::map<std::string, A>& a, const std::map<std::string, B>& b,
                    const char* a_name, const char* b_name) {
  for (const auto& [id, _] : a) {
    if (!b.count(id)) {
      throw Error(ErrorKind::kJoinFailure,
                  "sentence_id '" + id + "' in " + a_name + " has no match in " + b_name);
    }
  }
  for (const auto& [id, _] : b) {
    if (!a.count(id)) {
      throw Error(ErrorKind::kJoinFailure,
                  "sentence_id '" + id + "' in " + b_name + " has no match in " + a_name);
    }
  }
}

}  // namespace detail

/// Joins projections with gold annotations on sentence_id (1-1) and scores
/// the auto relation phrase of every valid item against the gold phrase.
/// Aggregation runs in sorted-id order, so input order never changes the
/// result.
inline EvalReport Evaluate(const std::vector<ProjectedRelation>& projected,
                           const std::vector<GoldAnnotation>& gold,
                           const BleuConfig& cfg = {}) {
  const auto auto_index = detail::IndexById(projected, "projected");
  const auto gold_index = detail::IndexById(gold, "gold");
  detail::RequireSameIds(auto_index, gold_index, "projected", "gold");

  EvalReport report;
  double bleu_sum = 0.0;
  std::size_t gold_len_sum = 0;
  std::size_t auto_len_sum = 0;
  for (const auto& [id, g] : gold_index) {
    ++report.n_total;
    if (!g->valid) continue;
    ++report.n_valid;
    const ProjectedSlot& rel = auto_index.at(id)->rel;
    double score = 0.0;
    if (rel) {
      score = SentenceBleu(rel->tokens, g->gold_rel, cfg);
      auto_len_sum += rel->tokens.size();
    } else {
      ++report.n_empty_auto;
    }
    bleu_sum += score;
    gold_len_sum += g->gold_rel.size();
    ++report.bins[BleuBin(score)];
  }

  if (report.n_total > 0) {
    report.pct_valid = 100.0 * static_cast<double>(report.n_valid) /
                       static_cast<double>(report.n_total);
  }
  if (report.n_valid > 0) {
    const double n = static_cast<double>(report.n_valid);
    report.mean_bleu = bleu_sum / n;
    report.avg_len_gold = static_cast<double>(gold_len_sum) / n;
    report.avg_len_auto = static_cast<double>(auto_len_sum) / n;
  }
  return report;
}

/// Two annotators agree perfectly on an item when they agree on validity and,
/// for valid items, chose the same token sequence.
inline AgreementReport Agreement(const std::vector<GoldAnnotation>& first,
                                 const std::vector<GoldAnnotation>& second,
                                 const BleuConfig& cfg = {}) {
  const auto a_index = detail::IndexById(first, "first annotation set");
  const auto b_index = detail::IndexById(second, "second annotation set");
  detail::RequireSameIds(a_index, b_index, "first annotation set", "second annotation set");

  AgreementReport report;
  std::size_t perfect = 0;
  double bleu_sum = 0.0;
  for (const auto& [id, a] : a_index) {
    const GoldAnnotation* b = b_index.at(id);
    ++report.n_pairs;
    if (a->valid != b->valid) continue;
    if (!a->valid) {
      ++perfect;
      continue;
    }
    ++report.n_both_valid;
    const Tokens ra = cfg.case_fold ? FoldCase(a->gold_rel) : a->gold_rel;
    const Tokens rb = cfg.case_fold ? FoldCase(b->gold_rel) : b->gold_rel;
    if (ra == rb) ++perfect;
    bleu_sum += SentenceBleu(ra, rb, cfg);
  }
  if (report.n_pairs > 0) {
    report.perfect_rate =
        100.0 * static_cast<double>(perfect) / static_cast<double>(report.n_pairs);
  }
  if (report.n_both_valid > 0) {
    report.mean_pairwise_bleu = bleu_sum / static_cast<double>(report.n_both_valid);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report rendering

namespace detail {

inline nlohmann::ordered_json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline std::string Fixed(const std::optional<double>& v, int digits, const char* suffix = "") {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f%s", digits, *v, suffix);
  return buf;
}

inline std::string BinLabel(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "[%.1f,%.1f%c", static_cast<double>(k) / 10.0,
                static_cast<double>(k + 1) / 10.0, k + 1 == kNumBleuBins ? ']' : ')');
  return buf;
}

}  // namespace detail

inline nlohmann::ordered_json ReportToJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["n_total"] = r.n_total;
  j["n_valid"] = r.n_valid;
  j["n_empty_auto"] = r.n_empty_auto;
  j["pct_valid"] = detail::OptionalNumber(r.pct_valid);
  j["mean_bleu"] = detail::OptionalNumber(r.mean_bleu);
  j["bins"] = r.bins;
  j["avg_len_gold"] = detail::OptionalNumber(r.avg_len_gold);
  j["avg_len_auto"] = detail::OptionalNumber(r.avg_len_auto);
  return j;
}

inline nlohmann::ordered_json ReportToJson(const AgreementReport& r) {
  nlohmann::ordered_json j;
  j["n_pairs"] = r.n_pairs;
  j["n_both_valid"] = r.n_both_valid;
  j["perfect_rate"] = detail::OptionalNumber(r.perfect_rate);
  j["mean_pairwise_bleu"] = detail::OptionalNumber(r.mean_pairwise_bleu);
  return j;
}

/// Language | % valid | BLEU | Gold len | Auto len
inline std::string FormatTable(const EvalReport& r, const std::string& label) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-12s %9s %6s %9s %9s\n", "Language", "% valid", "BLEU",
                "Gold len", "Auto len");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-12s %9s %6s %9s %9s\n", label.c_str(),
                detail::Fixed(r.pct_valid, 1, "%").c_str(), detail::Fixed(r.mean_bleu, 2).c_str(),
                detail::Fixed(r.avg_len_gold, 1).c_str(),
                detail::Fixed(r.avg_len_auto, 1).c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf), "items: %zu  valid: %zu  unprojected rel: %zu\n", r.n_total,
                r.n_valid, r.n_empty_auto);
  out += buf;
  return out;
}

inline std::string FormatHistogram(const EvalReport& r) {
  std::string out = "BLEU bin    count\n";
  char buf[64];
  for (std::size_t k = 0; k < kNumBleuBins; ++k) {
    std::snprintf(buf, sizeof(buf), "%-10s %6zu\n", detail::BinLabel(k).c_str(), r.bins[k]);
    out += buf;
  }
  return out;
}

inline std::string FormatTable(const AgreementReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "pairs: %zu  both valid: %zu  perfect agreement: %s  mean BLEU: %s\n",
                r.n_pairs, r.n_both_valid, detail::Fixed(r.perfect_rate, 1, "%").c_str(),
                detail::Fixed(r.mean_pairwise_bleu, 2).c_str());
  return buf;
}

}  // namespace relproj
