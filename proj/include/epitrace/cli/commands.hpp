/**
 * @file commands.hpp
 * @brief The tool's subcommands as library calls.
 *
 * Each command reads its inputs, writes its outputs into `out_dir`
 * (created if needed, every file written atomically) and prints a short
 * summary to `log`. Failures are thrown: InputError for bad inputs,
 * Error for everything else.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "epitrace/annotation/annotate.hpp"
#include "epitrace/corpus/corpus_io.hpp"
#include "epitrace/diagnostics/lasso.hpp"

namespace epitrace::cli {

namespace fs = std::filesystem;

/// Corpus parsing flags shared by every command.
struct InputConfig {
  std::string think_open = "<think>";
  std::string think_close = "</think>";
  /// "default" or "whitespace".
  std::string tokenizer = "default";

  LoadOptions load_options() const;
};

struct AnnotateConfig {
  InputConfig input_options;
  fs::path input;
  fs::path out_dir = ".";
  /// "mock", "keyword" or "llm".
  std::string annotator = "mock";
  std::optional<fs::path> mock_table;
  std::optional<fs::path> guidebook;
  std::optional<std::string> llm_endpoint;
  std::optional<std::string> llm_model;
  int llm_timeout_s = 120;
  AnnotateOptions options;
  std::size_t jobs = 1;
  bool use_cache = true;
  /// Defaults to out_dir/cache.
  std::optional<fs::path> cache_dir;
  /// Drop failed traces and exit 0 instead of failing the run.
  bool skip_failed = false;
};

struct AnnotateSummary {
  std::size_t traces = 0;
  std::size_t sentences = 0;
  std::uint64_t annotator_calls = 0;
  std::uint64_t cache_hits = 0;
  std::size_t retries = 0;
  std::vector<FailedTrace> failed;
};

/// Writes annotated.jsonl and annotation_log.jsonl. In strict mode a
/// failed trace raises Error and annotated.jsonl is not written.
AnnotateSummary cmd_annotate(const AnnotateConfig& config, std::ostream& log);

struct EvaluateConfig {
  InputConfig input_options;
  /// One or more predicted corpora, each reported as its own run.
  std::vector<fs::path> predicted;
  fs::path gold;
  fs::path out_dir = ".";
};

/// Writes agreement.csv.
void cmd_evaluate(const EvaluateConfig& config, std::ostream& log);

struct AnalyzeConfig {
  InputConfig input_options;
  /// Concatenated in order; trace ids must be unique across files.
  std::vector<fs::path> inputs;
  fs::path out_dir = ".";
  std::size_t bins = 25;
  std::size_t top_k = 20;
  SegmentFilter segment = SegmentFilter::All;
  std::optional<fs::path> stopwords;
};

/// Writes allocation.csv, temporal.csv and lexical.csv.
void cmd_analyze(const AnalyzeConfig& config, std::ostream& log);

struct CompareConfig {
  InputConfig input_options;
  fs::path corpus_a;
  fs::path corpus_b;
  /// Default to each corpus's file stem.
  std::optional<std::string> label_a;
  std::optional<std::string> label_b;
  SegmentFilter segment_a = SegmentFilter::All;
  SegmentFilter segment_b = SegmentFilter::All;
  std::vector<std::size_t> ngram_sizes{2, 3};
  std::size_t top_k = 20;
  fs::path out_dir = ".";
};

/// Writes mi_ranking.csv and allocation_delta.csv.
void cmd_compare(const CompareConfig& config, std::ostream& log);

struct DiagnoseConfig {
  InputConfig input_options;
  /// Concatenated in order; trace ids must be unique across files.
  std::vector<fs::path> inputs;
  fs::path out_dir = ".";
  LassoConfig lasso;
};

/// Fits on traces that carry a correctness label. Writes
/// coefficients.csv, features.csv and model.json.
void cmd_diagnose(const DiagnoseConfig& config, std::ostream& log);

struct StratifyConfig {
  InputConfig input_options;
  fs::path input;
  fs::path out_dir = ".";
  std::size_t sample_size = 500;
  std::uint64_t seed = 0;
};

/// Writes stratified.jsonl.
void cmd_stratify(const StratifyConfig& config, std::ostream& log);

}  // namespace epitrace::cli
