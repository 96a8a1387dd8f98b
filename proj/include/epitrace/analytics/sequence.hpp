/**
 * @file sequence.hpp
 * @brief Episode letter sequences, transition counts and n-gram patterns.
 *
 * Transition matrices count adjacent pairs of the raw sequence, so
 * self-transitions such as I->I are kept. N-gram patterns are taken from
 * the run-compressed sequence and never repeat a letter back to back.
 */

#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace {

struct EpisodeSequence {
  std::vector<Episode> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  bool operator==(const EpisodeSequence&) const = default;
};

/// One letter per sentence passing the filter. Throws InputError on an
/// unlabeled sentence.
EpisodeSequence episode_sequence(const Trace& trace, SegmentFilter filter = SegmentFilter::All);

/// Codes joined by `sep`, e.g. "R N I".
std::string to_string(const EpisodeSequence& seq, std::string_view sep = " ");

/// Accepts codes separated by spaces, dashes or nothing ("R N I",
/// "R-N-I", "RNI"). Throws InputError on an unknown code.
EpisodeSequence parse_sequence(std::string_view codes);

/// counts[src][tgt], indexed by index_of(Episode).
using TransitionMatrix = std::array<std::array<std::uint64_t, kEpisodeCount>, kEpisodeCount>;

TransitionMatrix transition_matrix(const EpisodeSequence& seq);
std::uint64_t transition_total(const TransitionMatrix& m) noexcept;

EpisodeSequence compress_runs(const EpisodeSequence& seq);

using Pattern = std::vector<Episode>;

/// Codes joined by '-', e.g. "E-M".
std::string pattern_string(const Pattern& p);

/// Distinct n-letter windows of compress_runs(seq). Empty when n is 0 or
/// longer than the compressed sequence.
std::set<Pattern> extract_ngrams(const EpisodeSequence& seq, std::size_t n);

}  // namespace epitrace
