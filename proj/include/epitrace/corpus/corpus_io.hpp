/**
 * @file corpus_io.hpp
 * @brief Reading and writing the one-trace-per-line JSON corpus format.
 *
 * Each non-blank line is a JSON object:
 *
 *   trace_id, model_id, model_class, problem_id      required
 *   question, correctness                            optional
 *   sentences: [{index, text, token_count?, segment,
 *                episode?, rationale?, gold_episode?}]
 *
 * Instead of `sentences` a record may carry raw text, either as
 * `think_text` / `answer_text` or as a single `response` holding think
 * delimiters (`think_delimiters: [open, close]` overrides the loader
 * default for that record). Raw text is segmented and token-counted at load
 * time.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/segmenter.hpp"
#include "epitrace/corpus/token_counter.hpp"
#include "epitrace/corpus/trace.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

class CorpusError : public InputError {
 public:
  using InputError::InputError;
};

struct LoadOptions {
  ThinkDelimiters delimiters;
  TokenCounter counter = default_token_counter();
};

/// Parses one record. `line_no` is 1-based and only used in messages.
/// Warnings (e.g. unbalanced think delimiters) are appended to `warnings`
/// when it is non-null.
Trace parse_trace_line(std::string_view line, std::size_t line_no, const LoadOptions& options,
                       std::vector<std::string>* warnings = nullptr);

Corpus read_corpus(std::istream& in, const LoadOptions& options, std::string source_label);

/// Loads a corpus file. The source label defaults to the file stem.
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {});

/// One compact JSON object with a fixed key order.
std::string serialize_trace(const Trace& trace);

void write_corpus(const Corpus& corpus, std::ostream& out);

/// Writes through a temporary sibling file and renames it into place, so
/// a failed write never leaves a truncated corpus behind.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace epitrace
