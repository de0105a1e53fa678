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

// Seeded random instances and synthetic corpora for property and
// acceptance tests.

#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "relproj/core.hpp"

namespace relproj::synthetic {

struct Instance {
  Sentence src;
  Sentence tgt;
  AlignmentSet align;
};

inline Tokens RandomTokens(std::mt19937_64& rng, std::size_t n, std::size_t vocab,
                           const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  Tokens out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(pick(rng)));
  return out;
}

/// Small sentence pair with independently drawn links. A tiny vocabulary
/// makes repeated tokens and BLEU ties common.
inline Instance SmallInstance(std::mt19937_64& rng, std::size_t max_len = 6) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Instance in;
  in.src = {"r", RandomTokens(rng, len(rng), 4, "s")};
  in.tgt = {"r", RandomTokens(rng, len(rng), 4, "t")};
  const double density = 0.1 + 0.3 * u(rng);
  std::vector<Link> links;
  for (std::size_t i = 0; i < in.src.size(); ++i)
    for (std::size_t j = 0; j < in.tgt.size(); ++j)
      if (u(rng) < density) links.push_back({i, j});
  in.align = AlignmentSet(in.src.size(), in.tgt.size(), links);
  return in;
}

/// Mostly-monotone alignment with occasional one-to-many links and
/// unaligned words, shaped like MT output.
inline AlignmentSet NoisyDiagonal(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> jitter(-1, 1);
  std::vector<Link> links;
  for (std::size_t i = 0; i < n; ++i) {
    if (u(rng) < 0.1) continue;
    const long base = static_cast<long>((i * m) / n) + jitter(rng);
    const std::size_t j = static_cast<std::size_t>(std::clamp<long>(base, 0, long(m) - 1));
    links.push_back({i, j});
    if (u(rng) < 0.1 && j + 1 < m) links.push_back({i, j + 1});
  }
  return AlignmentSet(n, m, links);
}

struct CorpusFiles {
  std::string src, tgt, align, triples;
};

/// Writes a corpus of `n` sentence pairs (10..30 tokens) with 1-2 triples per
/// sentence. Some relation phrases are normalized so they no longer occur in
/// the translation verbatim.
inline CorpusFiles WriteCorpus(const std::string& dir, std::size_t n, std::uint64_t seed) {
  CorpusFiles f{dir + "/src.txt", dir + "/tgt.txt", dir + "/align.txt", dir + "/triples.jsonl"};
  std::ofstream src(f.src), tgt(f.tgt), align(f.align), triples(f.triples);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(10, 30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto join = [](const Tokens& t) { return JoinTokens(t); };
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t ns = len(rng);
    const std::size_t nt = std::clamp<std::size_t>(ns + (rng() % 7) - 3, 10, 30);
    const Tokens s = RandomTokens(rng, ns, 300, "s");
    const Tokens t = RandomTokens(rng, nt, 300, "w");
    src << join(s) << '\n';
    tgt << join(t) << '\n';
    std::string line;
    const AlignmentSet a = NoisyDiagonal(rng, ns, nt);
    for (const Link& l : a.links()) {
      if (!line.empty()) line += ' ';
      line += std::to_string(l.src) + "-" + std::to_string(l.tgt);
    }
    align << line << '\n';

    const std::size_t n_triples = 1 + rng() % 2;
    for (std::size_t r = 0; r < n_triples; ++r) {
      // Three consecutive target chunks of 1-4 tokens.
      std::size_t pos = rng() % (nt - 9);
      Tokens slots[3];
      for (auto& slot : slots) {
        const std::size_t w = 1 + rng() % 3;
        slot.assign(t.begin() + pos, t.begin() + pos + w);
        pos += w;
      }
      if (u(rng) < 0.2) slots[1].insert(slots[1].begin(), "be");
      if (u(rng) < 0.05) slots[2] = {"unseen"};
      triples << "{\"sentence_id\":\"" << k << "\",\"arg1\":\"" << join(slots[0])
              << "\",\"rel\":\"" << join(slots[1]) << "\",\"arg2\":\"" << join(slots[2])
              << "\"}\n";
    }
  }
  return f;
}

}  // namespace relproj::synthetic
