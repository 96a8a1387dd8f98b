#include "epitrace/analytics/temporal.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "epitrace/error.hpp"

namespace epitrace {

std::size_t temporal_bin(std::uint64_t position, std::uint64_t total, std::size_t bins) noexcept {
  if (total == 0 || bins == 0) return 0;
  // floor(t / (L/B)) in exact integer arithmetic.
  const std::uint64_t b = position * bins / total;
  return static_cast<std::size_t>(std::min<std::uint64_t>(b, bins - 1));
}

TemporalProfile temporal_profile(const Trace& trace, std::size_t bins, SegmentFilter filter) {
  if (bins == 0) throw InputError("bin count must be at least 1");
  TemporalProfile p;
  p.bins = bins;
  p.total_tokens = trace.tokens_in(filter);
  if (p.total_tokens == 0) {
    throw InputError(fmt::format("trace {} has no {} tokens to bin", trace.trace_id,
                                 segment_filter_name(filter)));
  }
  std::array<std::vector<std::uint64_t>, kEpisodeCount> counts;
  for (auto& c : counts) c.assign(bins, 0);
  std::array<std::uint64_t, kEpisodeCount> totals{};

  const std::uint64_t L = p.total_tokens;
  std::uint64_t pos = 0;
  for (const auto& s : trace.sentences) {
    if (!passes(filter, s.segment) || s.token_count == 0) continue;
    const std::size_t e = index_of(require_episode(trace, s));
    const std::uint64_t end = pos + s.token_count;
    // Walk bin by bin: bin b holds positions [ceil(b*L/B), ceil((b+1)*L/B)).
    while (pos < end) {
      const std::size_t b = temporal_bin(pos, L, bins);
      const std::uint64_t bin_end =
          b + 1 >= bins ? L : ((b + 1) * static_cast<std::uint64_t>(L) + bins - 1) / bins;
      const std::uint64_t stop = std::min(end, bin_end);
      counts[e][b] += stop - pos;
      totals[e] += stop - pos;
      pos = stop;
    }
  }

  for (std::size_t e = 0; e < kEpisodeCount; ++e) {
    p.frequency[e].assign(bins, 0.0);
    if (totals[e] == 0) continue;
    p.present[e] = true;
    const double denom = static_cast<double>(totals[e]);
    for (std::size_t b = 0; b < bins; ++b) {
      p.frequency[e][b] = static_cast<double>(counts[e][b]) / denom;
    }
  }
  return p;
}

TemporalSummary average_temporal_profiles(std::span<const TemporalProfile> profiles) {
  TemporalSummary s;
  s.bins = profiles.empty() ? 0 : profiles.front().bins;
  s.trace_count = profiles.size();
  for (auto& m : s.mean) m.assign(s.bins, 0.0);
  for (const auto& p : profiles) {
    if (p.bins != s.bins) {
      throw InputError(fmt::format("cannot average profiles with {} and {} bins", s.bins, p.bins));
    }
    for (std::size_t e = 0; e < kEpisodeCount; ++e) {
      if (!p.present[e]) continue;
      ++s.traces_with_episode[e];
      for (std::size_t b = 0; b < s.bins; ++b) s.mean[e][b] += p.frequency[e][b];
    }
  }
  for (std::size_t e = 0; e < kEpisodeCount; ++e) {
    if (s.traces_with_episode[e] == 0) continue;
    const double n = static_cast<double>(s.traces_with_episode[e]);
    for (auto& v : s.mean[e]) v /= n;
  }
  return s;
}

TemporalSummary temporal_summary(std::span<const Trace> traces, std::size_t bins,
                                 SegmentFilter filter) {
  if (bins == 0) throw InputError("bin count must be at least 1");
  std::vector<TemporalProfile> profiles;
  profiles.reserve(traces.size());
  for (const auto& t : traces) {
    if (t.tokens_in(filter) == 0) continue;
    profiles.push_back(temporal_profile(t, bins, filter));
  }
  if (profiles.empty()) {
    TemporalSummary s;
    s.bins = bins;
    for (auto& m : s.mean) m.assign(bins, 0.0);
    return s;
  }
  return average_temporal_profiles(profiles);
}

}  // namespace epitrace
