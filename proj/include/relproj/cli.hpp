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

// Command-line front end: extract-phrases, project, pipeline, evaluate and
// agreement. Exit codes: 0 success, 1 data/validation error, 2 usage error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relproj/corpus_io.hpp"
#include "relproj/evaluation.hpp"
#include "relproj/phrase_extract.hpp"
#include "relproj/pipeline.hpp"
#include "relproj/projection.hpp"

namespace relproj::cli {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct CliConfig {
  std::string src, tgt, align, triples, phrases, projected, gold, first, second;
  std::string out;
  std::string label = "corpus";
  int bleu_order = 3;
  bool case_fold = false;
  bool no_brevity_penalty = false;
  bool no_extensions = false;
  std::optional<std::size_t> max_src_len, max_tgt_len;
  std::optional<std::size_t> min_len, max_len;
  bool id_column = false;
  std::size_t jobs = 1;
  bool json = false;
  bool bins = false;
  bool verbose = false;

  BleuConfig bleu() const {
    BleuConfig c;
    c.max_order = bleu_order;
    c.case_fold = case_fold;
    c.brevity_penalty = !no_brevity_penalty;
    return c;
  }
  ProjectionConfig projection() const {
    ProjectionConfig c;
    c.bleu = bleu();
    c.extract.max_src_len = max_src_len;
    c.extract.max_tgt_len = max_tgt_len;
    c.extract.include_unaligned_extensions = !no_extensions;
    return c;
  }
};

namespace detail {

/// Writes to --out (or stdout). A file left behind by a failed command is
/// removed.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (!path_.empty()) {
      file_ = std::make_unique<std::ofstream>(path_, std::ios::binary | std::ios::trunc);
      if (!*file_) throw Error(ErrorKind::kIo, "cannot write " + path_);
      stream_ = file_.get();
    }
  }
  ~Output() {
    if (file_ && !committed_) {
      file_.reset();
      std::error_code ec;
      std::filesystem::remove(path_, ec);
    }
  }
  std::ostream& stream() { return *stream_; }
  void Commit() {
    stream_->flush();
    if (!*stream_) throw Error(ErrorKind::kIo, "write failed" + (path_.empty() ? "" : " on " + path_));
    committed_ = true;
  }

 private:
  std::string path_;
  std::ostream* stream_;
  std::unique_ptr<std::ofstream> file_;
  bool committed_ = false;
};

inline void AddBleuFlags(CLI::App* sub, CliConfig& c) {
  sub->add_option("--bleu-order", c.bleu_order, "maximum BLEU n-gram order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--case-fold", c.case_fold, "compare tokens case-insensitively (ASCII)");
  sub->add_flag("--no-brevity-penalty", c.no_brevity_penalty, "disable the BLEU brevity penalty");
}

inline void AddCorpusFlags(CLI::App* sub, CliConfig& c) {
  sub->add_option("--src", c.src, "source sentences, one per line")->required();
  sub->add_option("--tgt", c.tgt, "English translations, one per line")->required();
  sub->add_option("--align", c.align, "Pharaoh alignments (i-j, 0-based)")->required();
  sub->add_flag("--id-column", c.id_column, "source lines are 'id<TAB>tokens'");
}

inline void AddExtractFlags(CLI::App* sub, CliConfig& c) {
  sub->add_option("--max-src-len", c.max_src_len, "maximum source phrase length")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-tgt-len", c.max_tgt_len, "maximum target phrase length")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--no-extensions", c.no_extensions,
                "do not extend source phrases over unaligned words");
}

inline ParallelReader OpenParallel(const CliConfig& c) {
  return ParallelReader(c.src, c.tgt, c.align, {c.id_column});
}

inline int ExtractPhrasesCmd(const CliConfig& c, std::ostream& out) {
  ParallelReader reader = OpenParallel(c);
  const ExtractConfig cfg = c.projection().extract;
  while (auto rec = reader.Next()) {
    for (const PhrasePair& p : ExtractPhrases(rec->source, rec->target, rec->alignment, cfg)) {
      out << p.src.start << '-' << p.src.end << '\t' << p.tgt.start << '-' << p.tgt.end << '\t'
          << JoinTokens(SliceTokens(rec->source.tokens, p.src)) << '\t'
          << JoinTokens(SliceTokens(rec->target.tokens, p.tgt)) << '\n';
    }
    out << '\n';
  }
  return 0;
}

inline int ProjectCmd(const CliConfig& c, std::ostream& out) {
  ParallelReader reader = OpenParallel(c);
  auto phrases = relproj::detail::OpenInput(c.phrases);
  const ProjectionConfig cfg = c.projection();
  std::string line;
  std::size_t line_no = 0;
  while (auto rec = reader.Next()) {
    ++line_no;
    if (!relproj::detail::ReadLine(*phrases, line)) {
      throw Error(ErrorKind::kLineCountMismatch, "phrase file ends early", line_no);
    }
    const Tokens query = SplitTokens(line);
    if (query.empty()) throw Error(ErrorKind::kEmptyField, "empty phrase", line_no);
    const ProjectedSlot slot =
        ProjectPhrase(rec->source, rec->target, rec->alignment, query, cfg);
    nlohmann::ordered_json j;
    j["sentence_id"] = rec->sentence_id;
    j["query"] = JoinTokens(query);
    const nlohmann::ordered_json fields = SlotToJson(slot);
    for (const auto& [key, value] : fields.items()) j[key] = value;
    out << j.dump() << '\n';
  }
  if (relproj::detail::ReadLine(*phrases, line)) {
    throw Error(ErrorKind::kLineCountMismatch, "phrase file has extra lines", line_no + 1);
  }
  return 0;
}

inline int PipelineCmd(const CliConfig& c, std::ostream& out, std::ostream& log) {
  ParallelReader parallel = OpenParallel(c);
  TripleReader triples(c.triples);
  PipelineOptions opts;
  opts.projection = c.projection();
  opts.min_len = c.min_len;
  opts.max_len = c.max_len;
  opts.jobs = c.jobs;
  const PipelineStats stats = RunPipeline(parallel, triples, out, opts);
  if (c.verbose) {
    log << "sentences: " << stats.sentences << "  filtered: " << stats.filtered
        << "  relations: " << stats.relations
        << "  unprojected slots: " << stats.unprojected_slots << '\n';
  }
  return 0;
}

inline int EvaluateCmd(const CliConfig& c, std::ostream& out) {
  const auto projected = ReadAll(ProjectedReader(c.projected));
  const auto gold = ReadAll(GoldReader(c.gold));
  const EvalReport report = Evaluate(projected, gold, c.bleu());
  if (c.json) {
    out << ReportToJson(report).dump() << '\n';
  } else {
    out << FormatTable(report, c.label);
  }
  if (c.bins) out << FormatHistogram(report);
  return 0;
}

inline int AgreementCmd(const CliConfig& c, std::ostream& out) {
  const auto first = ReadAll(GoldReader(c.first));
  const auto second = ReadAll(GoldReader(c.second));
  const AgreementReport report = Agreement(first, second, c.bleu());
  if (c.json) {
    out << ReportToJson(report).dump() << '\n';
  } else {
    out << FormatTable(report);
  }
  return 0;
}

}  // namespace detail

inline int Run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CliConfig c;
  CLI::App app{"Project English open-relation triples onto source-language sentences"};
  app.set_version_flag("--version", std::string("relproj ") + kToolkitVersion +
                                        " (format " + kFormatVersion + ")");
  app.set_config("--config", "", "read flags from a TOML/INI file; flags given on the "
                                 "command line take precedence");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* extract = app.add_subcommand("extract-phrases", "list consistent phrase pairs");
  detail::AddCorpusFlags(extract, c);
  detail::AddExtractFlags(extract, c);

  auto* project = app.add_subcommand("project", "project one English phrase per sentence");
  detail::AddCorpusFlags(project, c);
  project->add_option("--phrases", c.phrases, "one English phrase per line")->required();
  detail::AddExtractFlags(project, c);
  detail::AddBleuFlags(project, c);

  auto* pipeline = app.add_subcommand("pipeline", "project relation triples (JSONL)");
  detail::AddCorpusFlags(pipeline, c);
  pipeline->add_option("--triples", c.triples, "English triples, JSONL")->required();
  pipeline->add_option("--min-len", c.min_len, "skip source sentences shorter than this");
  pipeline->add_option("--max-len", c.max_len, "skip source sentences longer than this");
  pipeline->add_option("--jobs", c.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  detail::AddExtractFlags(pipeline, c);
  detail::AddBleuFlags(pipeline, c);

  auto* evaluate = app.add_subcommand("evaluate", "score projections against gold annotations");
  evaluate->add_option("--projected", c.projected, "pipeline output, JSONL")->required();
  evaluate->add_option("--gold", c.gold, "gold annotations, JSONL")->required();
  evaluate->add_option("--label", c.label, "row label for the table")->capture_default_str();
  evaluate->add_flag("--bins", c.bins, "print the BLEU histogram");
  detail::AddBleuFlags(evaluate, c);

  auto* agreement = app.add_subcommand("agreement", "agreement between two annotation sets");
  agreement->add_option("--first", c.first, "first annotator, JSONL")->required();
  agreement->add_option("--second", c.second, "second annotator, JSONL")->required();
  detail::AddBleuFlags(agreement, c);

  for (auto* sub : {extract, project, pipeline, evaluate, agreement}) {
    sub->add_option("--out", c.out, "output file (default: stdout)");
    sub->add_flag("-v,--verbose", c.verbose, "log progress to stderr");
    sub->failure_message(CLI::FailureMessage::help);
  }
  for (auto* sub : {evaluate, agreement}) {
    sub->add_flag("--json", c.json, "emit a JSON object instead of a table");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    detail::Output output(c.out, out);
    int rc = 0;
    if (*extract) {
      rc = detail::ExtractPhrasesCmd(c, output.stream());
    } else if (*project) {
      rc = detail::ProjectCmd(c, output.stream());
    } else if (*pipeline) {
      rc = detail::PipelineCmd(c, output.stream(), err);
    } else if (*evaluate) {
      rc = detail::EvaluateCmd(c, output.stream());
    } else if (*agreement) {
      rc = detail::AgreementCmd(c, output.stream());
    }
    output.Commit();
    return rc;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace relproj::cli
