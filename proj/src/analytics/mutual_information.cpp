#include "epitrace/analytics/mutual_information.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "epitrace/error.hpp"

namespace epitrace {

namespace {

std::vector<EpisodeSequence> sequences_of(const Corpus& corpus, SegmentFilter filter) {
  std::vector<EpisodeSequence> out;
  out.reserve(corpus.traces.size());
  for (const auto& t : corpus.traces) out.push_back(episode_sequence(t, filter));
  return out;
}

void require_nonempty(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw InputError("mutual information needs traces in both groups");
}

MIEntry make_entry(Pattern pattern, const PresenceCounts& c) {
  MIEntry e;
  e.pattern_text = pattern_string(pattern);
  e.pattern = std::move(pattern);
  e.counts = c;
  e.mi = mutual_information(c);
  const std::uint64_t present = c.present_a + c.present_b;
  if (present > 0) {
    e.attribution = c.present_b > c.present_a ? Group::B : Group::A;
    const std::uint64_t mine = e.attribution == Group::A ? c.present_a : c.present_b;
    e.p_group_given_present = static_cast<double>(mine) / static_cast<double>(present);
  }
  return e;
}

}  // namespace

double mutual_information(const PresenceCounts& c) noexcept {
  const double n = static_cast<double>(c.total_a + c.total_b);
  if (n == 0) return 0.0;
  const double cells[2][2] = {
      {static_cast<double>(c.present_a), static_cast<double>(c.present_b)},
      {static_cast<double>(c.total_a - c.present_a), static_cast<double>(c.total_b - c.present_b)},
  };
  const double row[2] = {cells[0][0] + cells[0][1], cells[1][0] + cells[1][1]};
  const double col[2] = {static_cast<double>(c.total_a), static_cast<double>(c.total_b)};
  double mi = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (cells[x][y] == 0) continue;
      const double pxy = cells[x][y] / n;
      mi += pxy * std::log2(pxy / ((row[x] / n) * (col[y] / n)));
    }
  }
  return std::max(0.0, mi);
}

double mi_score(const Pattern& pattern, std::span<const EpisodeSequence> a,
                std::span<const EpisodeSequence> b) {
  require_nonempty(a.size(), b.size());
  PresenceCounts c{0, a.size(), 0, b.size()};
  for (const auto& s : a) c.present_a += extract_ngrams(s, pattern.size()).contains(pattern);
  for (const auto& s : b) c.present_b += extract_ngrams(s, pattern.size()).contains(pattern);
  return mutual_information(c);
}

double mi_score(const Pattern& pattern, const Corpus& a, const Corpus& b, SegmentFilter filter) {
  const auto sa = sequences_of(a, filter);
  const auto sb = sequences_of(b, filter);
  return mi_score(pattern, sa, sb);
}

std::vector<MIEntry> rank_discriminative_patterns(std::span<const EpisodeSequence> a,
                                                  std::span<const EpisodeSequence> b,
                                                  const RankOptions& options) {
  require_nonempty(a.size(), b.size());
  if (options.top_k == 0) throw InputError("top_k must be at least 1");

  const std::set<std::size_t> ns(options.n_values.begin(), options.n_values.end());
  std::map<Pattern, PresenceCounts> table;
  auto tally = [&](std::span<const EpisodeSequence> seqs, bool is_a) {
    for (const auto& s : seqs) {
      for (std::size_t n : ns) {
        for (const auto& g : extract_ngrams(s, n)) {
          auto& c = table[g];
          (is_a ? c.present_a : c.present_b) += 1;
        }
      }
    }
  };
  tally(a, true);
  tally(b, false);

  std::vector<MIEntry> entries;
  entries.reserve(table.size());
  for (auto& [pattern, c] : table) {
    c.total_a = a.size();
    c.total_b = b.size();
    entries.push_back(make_entry(pattern, c));
  }
  std::sort(entries.begin(), entries.end(), [](const MIEntry& x, const MIEntry& y) {
    if (x.mi != y.mi) return x.mi > y.mi;
    return x.pattern_text < y.pattern_text;
  });
  if (entries.size() > options.top_k) entries.resize(options.top_k);
  return entries;
}

std::vector<MIEntry> rank_discriminative_patterns(const Corpus& a, const Corpus& b,
                                                  const RankOptions& options,
                                                  SegmentFilter filter_a, SegmentFilter filter_b) {
  const auto sa = sequences_of(a, filter_a);
  const auto sb = sequences_of(b, filter_b);
  return rank_discriminative_patterns(sa, sb, options);
}

}  // namespace epitrace
