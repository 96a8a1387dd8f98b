#include "epitrace/analytics/sequence.hpp"

#include <fmt/format.h>

#include "epitrace/error.hpp"

namespace epitrace {

EpisodeSequence episode_sequence(const Trace& trace, SegmentFilter filter) {
  EpisodeSequence seq;
  seq.letters.reserve(trace.sentences.size());
  for (const auto& s : trace.sentences) {
    if (passes(filter, s.segment)) seq.letters.push_back(require_episode(trace, s));
  }
  return seq;
}

std::string to_string(const EpisodeSequence& seq, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < seq.letters.size(); ++i) {
    if (i > 0) out += sep;
    out += episode_code(seq.letters[i]);
  }
  return out;
}

EpisodeSequence parse_sequence(std::string_view codes) {
  EpisodeSequence seq;
  for (char c : codes) {
    if (c == ' ' || c == '-' || c == '\t') continue;
    auto e = episode_from_code(c);
    if (!e) throw InputError(fmt::format("unknown episode code '{}'", c));
    seq.letters.push_back(*e);
  }
  return seq;
}

TransitionMatrix transition_matrix(const EpisodeSequence& seq) {
  TransitionMatrix m{};
  for (std::size_t i = 1; i < seq.letters.size(); ++i) {
    ++m[index_of(seq.letters[i - 1])][index_of(seq.letters[i])];
  }
  return m;
}

std::uint64_t transition_total(const TransitionMatrix& m) noexcept {
  std::uint64_t total = 0;
  for (const auto& row : m) {
    for (auto v : row) total += v;
  }
  return total;
}

EpisodeSequence compress_runs(const EpisodeSequence& seq) {
  EpisodeSequence out;
  for (Episode e : seq.letters) {
    if (out.letters.empty() || out.letters.back() != e) out.letters.push_back(e);
  }
  return out;
}

std::string pattern_string(const Pattern& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += '-';
    out += episode_code(p[i]);
  }
  return out;
}

std::set<Pattern> extract_ngrams(const EpisodeSequence& seq, std::size_t n) {
  std::set<Pattern> grams;
  const EpisodeSequence c = compress_runs(seq);
  if (n == 0 || c.size() < n) return grams;
  for (std::size_t i = 0; i + n <= c.size(); ++i) {
    grams.emplace(c.letters.begin() + static_cast<std::ptrdiff_t>(i),
                  c.letters.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return grams;
}

}  // namespace epitrace
