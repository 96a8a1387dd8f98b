#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace {

class Stopwords {
 public:
  /// One word per line; blank lines and lines starting with '#' skipped.
  static Stopwords parse(std::string_view text);
  static Stopwords load(const std::filesystem::path& path);
  /// The list compiled in from data/stopwords.txt.
  static const Stopwords& builtin();

  bool contains(std::string_view word) const { return words_.contains(word); }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

/// Lower-cased words: runs of letters, digits, non-ASCII bytes and inner
/// apostrophes ("let's"). A typographic apostrophe is folded to '.
std::vector<std::string> word_tokens(std::string_view text);

struct TokenCount {
  std::string token;
  std::uint64_t count = 0;
  bool operator==(const TokenCount&) const = default;
};

/// Most frequent non-stopword words in sentences labeled `episode`,
/// count descending then token ascending. top_k 0 keeps everything.
std::vector<TokenCount> lexical_profile(std::span<const Trace> traces, Episode episode,
                                        std::size_t top_k,
                                        const Stopwords& stopwords = Stopwords::builtin(),
                                        SegmentFilter filter = SegmentFilter::All);

}  // namespace epitrace
