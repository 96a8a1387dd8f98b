/**
 * @file features.hpp
 * @brief Per-trace feature vectors for correctness diagnostics.
 *
 * Layout (75 columns):
 *   0      total_tokens
 *   1      think_tokens     tokens in the think segment
 *   2      think_ratio      think_tokens / total_tokens
 *   3..10  ratio_<episode>  share of tokens labeled with the episode
 *   11..74 trans_<src>_<tgt> raw adjacent-pair counts, src-major
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epitrace/corpus/trace.hpp"

namespace epitrace {

inline constexpr std::size_t kGlobalFeatureCount = 3;
inline constexpr std::size_t kRatioOffset = kGlobalFeatureCount;
inline constexpr std::size_t kTransitionOffset = kRatioOffset + kEpisodeCount;
inline constexpr std::size_t kFeatureCount = kTransitionOffset + kEpisodeCount * kEpisodeCount;
static_assert(kFeatureCount == 75);

/// Column names in layout order.
const std::vector<std::string>& feature_names();

constexpr std::size_t ratio_feature(Episode e) noexcept { return kRatioOffset + index_of(e); }
constexpr std::size_t transition_feature(Episode src, Episode tgt) noexcept {
  return kTransitionOffset + index_of(src) * kEpisodeCount + index_of(tgt);
}

struct FeatureVector {
  std::string trace_id;
  std::array<double, kFeatureCount> values{};
  std::optional<bool> label;
};

/// Throws InputError on a zero-token trace or an unlabeled sentence.
FeatureVector extract_features(const Trace& trace);

struct FeatureMatrix {
  std::vector<std::string> trace_ids;
  Eigen::MatrixXd X;
  std::vector<std::optional<bool>> labels;
};

FeatureMatrix extract_feature_matrix(std::span<const Trace> traces);

}  // namespace epitrace
