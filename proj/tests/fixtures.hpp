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

// Hand-scored evaluation fixture shared by the unit and acceptance tests.
// Expected values come from tests/reference/bleu_reference.py (exact
// fractions, 40-digit arithmetic).

#pragma once

#include <array>
#include <vector>

#include "relproj/core.hpp"

namespace relproj::fixtures {

inline ProjectedRelation AutoRel(const std::string& id, const char* rel) {
  ProjectedRelation r;
  r.sentence_id = id;
  r.arg1 = ProjectedPhrase{{"a"}, Span{0, 0}, ProjectionMethod::kPhraseMatch, 1.0};
  r.arg2 = r.arg1;
  if (rel) {
    r.rel = ProjectedPhrase{SplitTokens(rel), std::nullopt, ProjectionMethod::kWordAlignFallback,
                            std::nullopt};
  }
  return r;
}

inline GoldAnnotation GoldRel(const std::string& id, bool valid, const char* rel = "") {
  return {id, valid, SplitTokens(rel)};
}

// Ten items: two invalid, one unprojected. Per-item scores:
//   0 1.0   1 exp(-0.5)   2 exp(-1.5)   4 1.0   5 exp(-1)   6 0 (none)
//   8 (1/12)^(1/3)   9 0
struct TenItems {
  std::vector<ProjectedRelation> projected{
      AutoRel("0", "was born in"), AutoRel("1", "born in"),      AutoRel("2", "fut enrôlé"),
      AutoRel("3", "is"),          AutoRel("4", "aaye"),         AutoRel("5", "произошла"),
      AutoRel("6", nullptr),       AutoRel("7", "lives in"),     AutoRel("8", "is the capital of"),
      AutoRel("9", "x y")};
  std::vector<GoldAnnotation> gold{
      GoldRel("0", true, "was born in"), GoldRel("1", true, "was born in"),
      GoldRel("2", true, "fut enrôlé de force au"), GoldRel("3", false),
      GoldRel("4", true, "aaye"),        GoldRel("5", true, "произошла в"),
      GoldRel("6", true, "moved to"),    GoldRel("7", false),
      GoldRel("8", true, "capital of"),  GoldRel("9", true, "a b")};

  static constexpr double kPctValid = 80.0;
  static constexpr double kMeanBleu = 0.45429131167508187608;
  static constexpr std::array<std::size_t, 10> kBins{2, 0, 1, 1, 1, 0, 1, 0, 0, 2};
  static constexpr double kAvgLenGold = 2.5;
  static constexpr double kAvgLenAuto = 1.875;
};

}  // namespace relproj::fixtures
