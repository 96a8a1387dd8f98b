/**
 * @file allocation.hpp
 * @brief Share of tokens spent in each episode.
 */

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace {

struct AllocationProfile {
  std::size_t trace_count = 0;
  std::uint64_t total_tokens = 0;
  std::array<std::uint64_t, kEpisodeCount> tokens{};
  /// 100 * tokens[c] / total_tokens; all zero when total_tokens is 0.
  std::array<double, kEpisodeCount> percentage{};
  /// tokens[c] / trace_count.
  std::array<double, kEpisodeCount> mean_tokens{};
  double mean_total_tokens = 0.0;
};

/// Throws InputError on an empty trace set or an unlabeled sentence that
/// passes the filter.
AllocationProfile allocation_profile(std::span<const Trace> traces,
                                     SegmentFilter filter = SegmentFilter::All);

inline AllocationProfile allocation_profile(const Corpus& corpus,
                                            SegmentFilter filter = SegmentFilter::All) {
  return allocation_profile(corpus.traces, filter);
}

/// Traces keyed by model_id, input order preserved within each group.
std::map<std::string, std::vector<Trace>> group_by_model(const Corpus& corpus);

}  // namespace epitrace
