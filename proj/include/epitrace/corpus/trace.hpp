/**
 * @file trace.hpp
 * @brief In-memory data model for reasoning traces.
 *
 * A Trace is one model response to one problem, already split into
 * sentences. Sentences carry their token count, the segment they came from
 * (think or answer) and, once annotated, an episode label.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/episode.hpp"

namespace epitrace {

enum class Segment : std::uint8_t { Think, Answer };

std::string_view segment_name(Segment s) noexcept;
std::optional<Segment> parse_segment(std::string_view s) noexcept;

enum class ModelClass : std::uint8_t { Reasoning, NonReasoning, Efficient };

std::string_view model_class_name(ModelClass c) noexcept;
std::optional<ModelClass> parse_model_class(std::string_view s) noexcept;

/// Restricts analytics to one segment of each trace.
enum class SegmentFilter : std::uint8_t { All, Think, Answer };

std::string_view segment_filter_name(SegmentFilter f) noexcept;
std::optional<SegmentFilter> parse_segment_filter(std::string_view s) noexcept;

constexpr bool passes(SegmentFilter f, Segment s) noexcept {
  switch (f) {
    case SegmentFilter::All: return true;
    case SegmentFilter::Think: return s == Segment::Think;
    case SegmentFilter::Answer: return s == Segment::Answer;
  }
  return false;
}

struct SentenceRecord {
  std::size_t index = 0;
  std::string text;
  std::uint64_t token_count = 0;
  Segment segment = Segment::Answer;
  std::optional<Episode> episode;
  std::optional<std::string> rationale;
  /// Human reference label; only present in gold corpora.
  std::optional<Episode> gold_episode;
};

struct Trace {
  std::string trace_id;
  std::string model_id;
  ModelClass model_class = ModelClass::Reasoning;
  std::string problem_id;
  /// Problem statement shown to the annotator. Optional.
  std::optional<std::string> question;
  std::vector<SentenceRecord> sentences;
  std::optional<bool> correctness;

  std::uint64_t total_tokens() const noexcept;
  std::uint64_t tokens_in(SegmentFilter f) const noexcept;
  bool fully_labeled() const noexcept;
};

struct Corpus {
  std::vector<Trace> traces;
  /// Group tag used when two corpora are compared.
  std::string source_label;
  /// Non-fatal notes raised while loading (e.g. an unterminated think block).
  std::vector<std::string> warnings;

  const Trace* find(std::string_view trace_id) const noexcept;
};

/// The sentence's episode; throws InputError naming the trace and
/// sentence when it is unlabeled.
Episode require_episode(const Trace& trace, const SentenceRecord& sentence);

/// Checks the structural invariants of a trace: gapless 0-based indices,
/// think sentences before answer sentences, nonzero token counts on
/// non-empty text. Throws InputError describing the first violation.
void validate_trace(const Trace& trace);

}  // namespace epitrace
