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

// Streaming translate -> extract -> project pipeline over file-backed
// translation and relation-extraction outputs.

#pragma once

#include <atomic>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "relproj/corpus_io.hpp"
#include "relproj/projection.hpp"

namespace relproj {

struct PipelineOptions {
  ProjectionConfig projection;
  // Sentences whose source length falls outside [min_len, max_len] are
  // skipped together with their triples.
  std::optional<std::size_t> min_len;
  std::optional<std::size_t> max_len;
  std::size_t jobs = 1;
  std::size_t batch_size = 256;  // sentences per parallel batch
};

struct PipelineStats {
  std::size_t sentences = 0;  // sentences that had triples and were projected
  std::size_t filtered = 0;   // sentences dropped by the length filter
  std::size_t relations = 0;
  std::size_t unprojected_slots = 0;
};

namespace detail {

struct WorkItem {
  ParallelRecord record;
  std::vector<RelationTriple> triples;
};

inline std::vector<std::string> ProjectItem(const WorkItem& item, const ProjectionConfig& cfg,
                                            std::size_t& unprojected) {
  SentenceProjector projector(item.record.source, item.record.target, item.record.alignment,
                              cfg);
  std::vector<std::string> lines;
  lines.reserve(item.triples.size());
  for (const auto& triple : item.triples) {
    const ProjectedRelation rel = projector.Project(triple);
    unprojected += !rel.arg1 + !rel.rel + !rel.arg2;
    lines.push_back(FormatProjected(rel));
  }
  return lines;
}

}  // namespace detail

/// Joins the triple stream against the parallel stream and writes one
/// projected relation per triple, in triple order. Triples must be grouped
/// by sentence and appear in corpus order; sentences without triples are
/// passed over. Output is identical for every value of `jobs`.
inline PipelineStats RunPipeline(ParallelReader& parallel, TripleReader& triples,
                                 std::ostream& out, const PipelineOptions& opts = {}) {
  PipelineStats stats;
  std::vector<detail::WorkItem> batch;
  std::optional<ParallelRecord> current;
  bool current_filtered = false;

  auto flush = [&] {
    const std::size_t n = batch.size();
    std::vector<std::vector<std::string>> lines(n);
    std::vector<std::size_t> unprojected(n, 0);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < n; k = next++) {
        try {
          lines[k] = detail::ProjectItem(batch[k], opts.projection, unprojected[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    const std::size_t n_threads = std::min(std::max<std::size_t>(opts.jobs, 1), n);
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(work);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      for (const auto& line : lines[k]) out << line << '\n';
      stats.relations += lines[k].size();
      stats.unprojected_slots += unprojected[k];
    }
    stats.sentences += n;
    batch.clear();
  };

  while (auto triple = triples.Next()) {
    if (!current || current->sentence_id != triple->sentence_id) {
      current.reset();
      while (auto rec = parallel.Next()) {
        if (rec->sentence_id == triple->sentence_id) {
          current = std::move(rec);
          break;
        }
      }
      if (!current) {
        throw Error(ErrorKind::kJoinFailure,
                    "triple for sentence '" + triple->sentence_id +
                        "' has no parallel record (unknown id or triples out of corpus order)",
                    triples.line());
      }
      const std::size_t len = current->source.size();
      current_filtered = (opts.min_len && len < *opts.min_len) ||
                         (opts.max_len && len > *opts.max_len);
      if (current_filtered) {
        ++stats.filtered;
      } else {
        if (batch.size() >= std::max<std::size_t>(opts.batch_size, 1)) flush();
        batch.push_back({*current, {}});
      }
    }
    if (!current_filtered) batch.back().triples.push_back(std::move(*triple));
  }
  flush();
  // Surface malformed or truncated input past the last triple too.
  while (parallel.Next()) {
  }
  return stats;
}

}  // namespace relproj
