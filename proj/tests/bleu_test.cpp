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

#include "relproj/bleu.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace relproj {
namespace {

Tokens T(const char* text) { return SplitTokens(text); }

TEST(CountNgrams, Unigrams) {
  NgramCounts expected{{{"a"}, 2}, {{"b"}, 1}};
  EXPECT_EQ(CountNgrams(T("a b a"), 1), expected);
}

TEST(CountNgrams, Bigrams) {
  NgramCounts expected{{{"a", "b"}, 1}, {{"b", "a"}, 1}};
  EXPECT_EQ(CountNgrams(T("a b a"), 2), expected);
}

TEST(CountNgrams, TooShortIsEmpty) { EXPECT_TRUE(CountNgrams(T("a"), 2).empty()); }

TEST(CountNgrams, ZeroOrderRejected) { EXPECT_THROW(CountNgrams(T("a"), 0), Error); }

TEST(SentenceBleu, IdentityIsOne) {
  EXPECT_EQ(SentenceBleu(T("be president of"), T("be president of")), 1.0);
}

TEST(SentenceBleu, NoUnigramOverlapIsZero) { EXPECT_EQ(SentenceBleu(T("x"), T("y")), 0.0); }

TEST(SentenceBleu, HandDerivedValue) {
  // p1 = 2/3, p2 = 2/3, p3 = 1/2, no brevity penalty: (2/9)^(1/3).
  // Frozen from an exact-fraction/40-digit evaluation done outside this code.
  const double expected = 0.60570686427737988630;
  EXPECT_NEAR(SentenceBleu(T("be president of"), T("president of")), expected, 1e-12);

  const BleuStats st = BleuBreakdown(T("be president of"), T("president of"));
  ASSERT_EQ(st.orders.size(), 3u);
  EXPECT_EQ(st.orders[0].matches, 2u);
  EXPECT_EQ(st.orders[1].matches, 1u);
  EXPECT_EQ(st.orders[2].matches, 0u);
  EXPECT_EQ(st.brevity_penalty, 1.0);
}

TEST(SentenceBleu, ShortCandidateSkipsHigherOrders) {
  // One-token candidate: only p1 enters the mean; BP = exp(1 - 3).
  const BleuStats st = BleuBreakdown(T("president"), T("be president of"));
  EXPECT_EQ(st.orders.size(), 1u);
  EXPECT_NEAR(st.score, std::exp(-2.0), 1e-15);
}

TEST(SentenceBleu, ClipsRepeatedMatches) {
  // "the the the" vs "the cat": p1 = 1/3, p2 = 1/3, p3 = 1/2.
  EXPECT_NEAR(SentenceBleu(T("the the the"), T("the cat")), std::cbrt(1.0 / 18.0), 1e-15);
}

TEST(SentenceBleu, BrevityPenaltyCanBeDisabled) {
  BleuConfig cfg;
  cfg.brevity_penalty = false;
  EXPECT_EQ(SentenceBleu(T("born in"), T("was born in"), cfg), 1.0);
  EXPECT_LT(SentenceBleu(T("born in"), T("was born in")), 1.0);
}

TEST(SentenceBleu, CaseFoldIsOptIn) {
  BleuConfig fold;
  fold.case_fold = true;
  EXPECT_EQ(SentenceBleu(T("Obama"), T("obama")), 0.0);
  EXPECT_EQ(SentenceBleu(T("Obama"), T("obama"), fold), 1.0);
}

TEST(SentenceBleu, EmptyInputRejected) {
  try {
    SentenceBleu({}, T("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyInput);
  }
  EXPECT_THROW(SentenceBleu(T("a"), {}), Error);
}

TEST(SentenceBleu, MathematicallyEqualProductsTieExactly) {
  // "d c b a": p = 4/4, 1/4, 1/3.  "a b x y": p = 2/4, 2/4, 1/3.  Both
  // products are 1/12, so the scores must be bit-identical.
  const Tokens ref = T("a b c d");
  const BleuStats s1 = BleuBreakdown(T("d c b a"), ref);
  const BleuStats s2 = BleuBreakdown(T("a b x y"), ref);
  EXPECT_EQ(s1.orders[0].matches, 4u);
  EXPECT_EQ(s2.orders[1].matches, 1u);
  EXPECT_EQ(s1.score, s2.score);
  EXPECT_NEAR(s1.score, std::cbrt(1.0 / 12.0), 1e-15);
}

TEST(SentenceBleuProperty, RangeIdentityAndOracleAgreement) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const Tokens c = synthetic::RandomTokens(rng, len(rng), 5, "w");
    const Tokens r = synthetic::RandomTokens(rng, len(rng), 5, "w");
    const double score = SentenceBleu(c, r);
    ASSERT_GE(score, 0.0);
    ASSERT_LE(score, 1.0);
    ASSERT_NEAR(score, oracle::Bleu(c, r), 1e-12) << JoinTokens(c) << " | " << JoinTokens(r);
    ASSERT_EQ(SentenceBleu(c, c), 1.0);
    ASSERT_EQ(score, SentenceBleu(c, r));  // deterministic

    bool shared = false;
    for (const auto& w : c) shared = shared || std::find(r.begin(), r.end(), w) != r.end();
    if (shared) {
      ASSERT_GT(score, 0.0);
    } else {
      ASSERT_EQ(score, 0.0);
    }
  }
}

TEST(SentenceBleuProperty, HigherOrdersAgreeWithOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int order = 1; order <= 5; ++order) {
    BleuConfig cfg;
    cfg.max_order = order;
    for (int trial = 0; trial < 200; ++trial) {
      const Tokens c = synthetic::RandomTokens(rng, len(rng), 3, "w");
      const Tokens r = synthetic::RandomTokens(rng, len(rng), 3, "w");
      ASSERT_NEAR(SentenceBleu(c, r, cfg), oracle::Bleu(c, r, order), 1e-12);
    }
  }
}

}  // namespace
}  // namespace relproj
