/**
 * @file mutual_information.hpp
 * @brief Which episode n-grams separate two groups of traces.
 *
 * Each trace contributes one observation: whether the pattern occurs in
 * its run-compressed sequence, and which group it belongs to. MI is taken
 * over that 2x2 table in bits.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "epitrace/analytics/sequence.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace {

struct PresenceCounts {
  std::uint64_t present_a = 0;
  std::uint64_t total_a = 0;
  std::uint64_t present_b = 0;
  std::uint64_t total_b = 0;
};

/// MI in bits of the present/absent x A/B table; 0 log 0 = 0.
double mutual_information(const PresenceCounts& c) noexcept;

/// Throws InputError if either side is empty.
double mi_score(const Pattern& pattern, std::span<const EpisodeSequence> a,
                std::span<const EpisodeSequence> b);
double mi_score(const Pattern& pattern, const Corpus& a, const Corpus& b,
                SegmentFilter filter = SegmentFilter::All);

enum class Group : std::uint8_t { A, B };

struct MIEntry {
  Pattern pattern;
  std::string pattern_text;
  double mi = 0.0;
  PresenceCounts counts;
  /// Group with the larger share of the traces containing the pattern;
  /// A on ties.
  Group attribution = Group::A;
  double p_group_given_present = 0.0;
};

struct RankOptions {
  std::vector<std::size_t> n_values{2, 3};
  std::size_t top_k = 20;
};

/// Scores every pattern seen on either side and keeps the top_k by MI,
/// ties broken by pattern_text ascending.
std::vector<MIEntry> rank_discriminative_patterns(std::span<const EpisodeSequence> a,
                                                  std::span<const EpisodeSequence> b,
                                                  const RankOptions& options = {});
std::vector<MIEntry> rank_discriminative_patterns(const Corpus& a, const Corpus& b,
                                                  const RankOptions& options = {},
                                                  SegmentFilter filter_a = SegmentFilter::All,
                                                  SegmentFilter filter_b = SegmentFilter::All);

}  // namespace epitrace
