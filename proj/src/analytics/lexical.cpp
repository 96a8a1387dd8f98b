#include "epitrace/analytics/lexical.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "epitrace/embedded_data.hpp"
#include "epitrace/file_util.hpp"

namespace epitrace {

namespace {

bool is_word_byte(unsigned char c) noexcept { return std::isalnum(c) != 0 || c >= 0x80; }

}  // namespace

Stopwords Stopwords::parse(std::string_view text) {
  Stopwords s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::string word(line.substr(b, e - b + 1));
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    s.words_.insert(std::move(word));
  }
  return s;
}

Stopwords Stopwords::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const Stopwords& Stopwords::builtin() {
  static const Stopwords s = parse(embedded::kStopwords);
  return s;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::string folded;
  folded.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "\xE2\x80\x99") == 0) {
      folded += '\'';
      i += 2;
    } else {
      folded += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    }
  }

  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    if (!cur.empty()) words.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < folded.size(); ++i) {
    const auto c = static_cast<unsigned char>(folded[i]);
    if (is_word_byte(c)) {
      cur += folded[i];
    } else if (c == '\'' && !cur.empty() && i + 1 < folded.size() &&
               is_word_byte(static_cast<unsigned char>(folded[i + 1]))) {
      cur += '\'';
    } else {
      flush();
    }
  }
  flush();
  return words;
}

std::vector<TokenCount> lexical_profile(std::span<const Trace> traces, Episode episode,
                                        std::size_t top_k, const Stopwords& stopwords,
                                        SegmentFilter filter) {
  std::map<std::string, std::uint64_t, std::less<>> counts;
  for (const auto& t : traces) {
    for (const auto& s : t.sentences) {
      if (!passes(filter, s.segment) || require_episode(t, s) != episode) continue;
      for (auto& w : word_tokens(s.text)) {
        if (!stopwords.contains(w)) ++counts[std::move(w)];
      }
    }
  }
  std::vector<TokenCount> out;
  out.reserve(counts.size());
  for (auto& [token, n] : counts) out.push_back({token, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const TokenCount& a, const TokenCount& b) { return a.count > b.count; });
  if (top_k > 0 && out.size() > top_k) out.resize(top_k);
  return out;
}

}  // namespace epitrace
