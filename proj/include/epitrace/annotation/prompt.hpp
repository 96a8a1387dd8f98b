#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epitrace/annotation/guidebook.hpp"
#include "epitrace/corpus/episode.hpp"

namespace epitrace {

struct LabeledSentence {
  std::string text;
  Episode episode = Episode::Read;
};

struct BatchItem {
  /// Sentence index within the trace.
  std::size_t index = 0;
  std::string text;
};

/// One annotator call: a contiguous run of sentences plus the labeled
/// sentences that precede it.
struct AnnotationBatch {
  std::string trace_id;
  std::string question;
  /// Trace index of previous_context.front(); the context may be a window.
  std::size_t context_start = 0;
  std::vector<LabeledSentence> previous_context;
  std::vector<BatchItem> items;

  std::size_t size() const noexcept { return items.size(); }
};

/// Throws InputError unless items are non-empty, contiguous, and begin
/// right after the previous context.
void validate_batch(const AnnotationBatch& batch);

/// Shown in the Previous Context block of the first batch of a trace.
inline constexpr std::string_view kEmptyContextMarker = "(none: this is the start of the response)";

/// Builds the annotation prompt. Blocks appear in this order: task
/// framing, [Guidebook], [Math Problem], [Previous Context], [Input] with
/// items renumbered [1]..[k], [Format], and a closing instruction naming k.
std::string assemble_prompt(const Guidebook& guidebook, const AnnotationBatch& batch);

}  // namespace epitrace
