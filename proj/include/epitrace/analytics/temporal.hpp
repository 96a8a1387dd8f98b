/**
 * @file temporal.hpp
 * @brief Where in a response each episode's tokens fall.
 *
 * A trace of L tokens is cut into B equal bins; token t lands in bin
 * floor(t * B / L). Sentence i occupies the token_count positions that
 * follow the tokens of sentences 0..i-1. For each episode the per-bin
 * counts are divided by that episode's token total, so each present
 * episode's vector sums to 1.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace {

inline constexpr std::size_t kDefaultBins = 25;

std::size_t temporal_bin(std::uint64_t position, std::uint64_t total, std::size_t bins) noexcept;

struct TemporalProfile {
  std::size_t bins = 0;
  std::uint64_t total_tokens = 0;
  std::array<std::vector<double>, kEpisodeCount> frequency;
  std::array<bool, kEpisodeCount> present{};
};

/// Throws InputError if bins is 0, the trace has no tokens under the
/// filter, or a counted sentence is unlabeled.
TemporalProfile temporal_profile(const Trace& trace, std::size_t bins = kDefaultBins,
                                 SegmentFilter filter = SegmentFilter::All);

/// Mean of per-trace vectors, taken per episode over the traces in which
/// that episode occurs.
struct TemporalSummary {
  std::size_t bins = 0;
  std::size_t trace_count = 0;
  std::array<std::vector<double>, kEpisodeCount> mean;
  std::array<std::size_t, kEpisodeCount> traces_with_episode{};
};

/// Profiles must share one bin count.
TemporalSummary average_temporal_profiles(std::span<const TemporalProfile> profiles);

/// Profiles every trace with tokens under the filter and averages them.
/// Traces without such tokens are skipped.
TemporalSummary temporal_summary(std::span<const Trace> traces, std::size_t bins = kDefaultBins,
                                 SegmentFilter filter = SegmentFilter::All);

}  // namespace epitrace
