#include "epitrace/diagnostics/features.hpp"

#include <fmt/format.h>

#include "epitrace/analytics/sequence.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"total_tokens", "think_tokens", "think_ratio"};
    for (Episode e : kAllEpisodes) n.push_back(fmt::format("ratio_{}", episode_slug(e)));
    for (Episode src : kAllEpisodes) {
      for (Episode tgt : kAllEpisodes) {
        n.push_back(fmt::format("trans_{}_{}", episode_slug(src), episode_slug(tgt)));
      }
    }
    return n;
  }();
  return names;
}

FeatureVector extract_features(const Trace& trace) {
  FeatureVector f;
  f.trace_id = trace.trace_id;
  f.label = trace.correctness;

  const std::uint64_t total = trace.total_tokens();
  if (total == 0) throw InputError(fmt::format("trace {} has no tokens", trace.trace_id));
  const std::uint64_t think = trace.tokens_in(SegmentFilter::Think);
  const double denom = static_cast<double>(total);

  f.values[0] = static_cast<double>(total);
  f.values[1] = static_cast<double>(think);
  f.values[2] = static_cast<double>(think) / denom;

  std::array<std::uint64_t, kEpisodeCount> by_episode{};
  for (const auto& s : trace.sentences) by_episode[index_of(require_episode(trace, s))] += s.token_count;
  for (Episode e : kAllEpisodes) {
    f.values[ratio_feature(e)] = static_cast<double>(by_episode[index_of(e)]) / denom;
  }

  const TransitionMatrix m = transition_matrix(episode_sequence(trace));
  for (Episode src : kAllEpisodes) {
    for (Episode tgt : kAllEpisodes) {
      f.values[transition_feature(src, tgt)] = static_cast<double>(m[index_of(src)][index_of(tgt)]);
    }
  }
  return f;
}

FeatureMatrix extract_feature_matrix(std::span<const Trace> traces) {
  FeatureMatrix fm;
  fm.X.resize(static_cast<Eigen::Index>(traces.size()), static_cast<Eigen::Index>(kFeatureCount));
  fm.trace_ids.reserve(traces.size());
  fm.labels.reserve(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    FeatureVector f = extract_features(traces[i]);
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      fm.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.values[j];
    }
    fm.trace_ids.push_back(std::move(f.trace_id));
    fm.labels.push_back(f.label);
  }
  return fm;
}

}  // namespace epitrace
