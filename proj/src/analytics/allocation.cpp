#include "epitrace/analytics/allocation.hpp"

#include "epitrace/error.hpp"

namespace epitrace {

AllocationProfile allocation_profile(std::span<const Trace> traces, SegmentFilter filter) {
  if (traces.empty()) throw InputError("allocation profile of an empty trace set");
  AllocationProfile p;
  p.trace_count = traces.size();
  for (const auto& t : traces) {
    for (const auto& s : t.sentences) {
      if (!passes(filter, s.segment)) continue;
      p.tokens[index_of(require_episode(t, s))] += s.token_count;
      p.total_tokens += s.token_count;
    }
  }
  const double n = static_cast<double>(p.trace_count);
  for (std::size_t c = 0; c < kEpisodeCount; ++c) {
    if (p.total_tokens > 0) {
      p.percentage[c] = 100.0 * static_cast<double>(p.tokens[c]) / static_cast<double>(p.total_tokens);
    }
    p.mean_tokens[c] = static_cast<double>(p.tokens[c]) / n;
  }
  p.mean_total_tokens = static_cast<double>(p.total_tokens) / n;
  return p;
}

std::map<std::string, std::vector<Trace>> group_by_model(const Corpus& corpus) {
  std::map<std::string, std::vector<Trace>> groups;
  for (const auto& t : corpus.traces) groups[t.model_id].push_back(t);
  return groups;
}

}  // namespace epitrace
