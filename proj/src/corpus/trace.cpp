#include "epitrace/corpus/trace.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <utility>

#include "epitrace/error.hpp"

namespace epitrace {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table,
                        std::string_view key) noexcept {
  for (const auto& [name, value] : table) {
    if (name == key) return value;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Segment>, 2> kSegments = {{
    {"think", Segment::Think},
    {"answer", Segment::Answer},
}};

constexpr std::array<std::pair<std::string_view, ModelClass>, 3> kModelClasses = {{
    {"reasoning", ModelClass::Reasoning},
    {"non_reasoning", ModelClass::NonReasoning},
    {"efficient", ModelClass::Efficient},
}};

constexpr std::array<std::pair<std::string_view, SegmentFilter>, 3> kFilters = {{
    {"all", SegmentFilter::All},
    {"think", SegmentFilter::Think},
    {"answer", SegmentFilter::Answer},
}};

}  // namespace

std::string_view segment_name(Segment s) noexcept { return kSegments[static_cast<int>(s)].first; }
std::optional<Segment> parse_segment(std::string_view s) noexcept { return lookup(kSegments, s); }

std::string_view model_class_name(ModelClass c) noexcept {
  return kModelClasses[static_cast<int>(c)].first;
}
std::optional<ModelClass> parse_model_class(std::string_view s) noexcept {
  return lookup(kModelClasses, s);
}

std::string_view segment_filter_name(SegmentFilter f) noexcept {
  return kFilters[static_cast<int>(f)].first;
}
std::optional<SegmentFilter> parse_segment_filter(std::string_view s) noexcept {
  return lookup(kFilters, s);
}

std::uint64_t Trace::total_tokens() const noexcept { return tokens_in(SegmentFilter::All); }

std::uint64_t Trace::tokens_in(SegmentFilter f) const noexcept {
  std::uint64_t sum = 0;
  for (const auto& s : sentences) {
    if (passes(f, s.segment)) sum += s.token_count;
  }
  return sum;
}

bool Trace::fully_labeled() const noexcept {
  return std::all_of(sentences.begin(), sentences.end(),
                     [](const SentenceRecord& s) { return s.episode.has_value(); });
}

const Trace* Corpus::find(std::string_view trace_id) const noexcept {
  for (const auto& t : traces) {
    if (t.trace_id == trace_id) return &t;
  }
  return nullptr;
}

Episode require_episode(const Trace& trace, const SentenceRecord& sentence) {
  if (!sentence.episode) {
    throw InputError(
        fmt::format("trace {} sentence {} is not labeled", trace.trace_id, sentence.index));
  }
  return *sentence.episode;
}

void validate_trace(const Trace& trace) {
  bool seen_answer = false;
  for (std::size_t i = 0; i < trace.sentences.size(); ++i) {
    const auto& s = trace.sentences[i];
    if (s.index != i) {
      throw InputError(fmt::format("trace {}: sentence index {} at position {} (expected {})",
                                   trace.trace_id, s.index, i, i));
    }
    if (s.segment == Segment::Answer) {
      seen_answer = true;
    } else if (seen_answer) {
      throw InputError(fmt::format(
          "trace {}: think sentence {} follows an answer sentence", trace.trace_id, i));
    }
    if (!s.text.empty() && s.token_count == 0) {
      throw InputError(fmt::format("trace {}: sentence {} has text but token_count 0",
                                   trace.trace_id, i));
    }
  }
}

}  // namespace epitrace
