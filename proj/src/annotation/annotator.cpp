#include "epitrace/annotation/annotator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>

#include "epitrace/annotation/response.hpp"

namespace epitrace {

namespace {

constexpr std::array<std::string_view, 12> kGenericWords = {
    "the", "to", "is", "do", "a", "an", "of", "it", "this", "that", "and", "or",
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_word_char(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

std::string_view trim_piece(std::string_view s) {
  constexpr std::string_view kStrip = " \t\n,.;:?!\"'";
  const auto b = s.find_first_not_of(kStrip);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kStrip);
  return s.substr(b, e - b + 1);
}

bool is_generic(std::string_view piece) {
  if (piece.size() < 3) return true;
  return std::find(kGenericWords.begin(), kGenericWords.end(), piece) != kGenericWords.end();
}

/// "Then/Now calculate/consider" -> 4 variants.
std::vector<std::string> expand_alternatives(std::string_view piece) {
  std::vector<std::string> variants{""};
  std::size_t pos = 0;
  while (pos <= piece.size()) {
    std::size_t end = piece.find(' ', pos);
    if (end == std::string_view::npos) end = piece.size();
    const std::string_view word = piece.substr(pos, end - pos);
    std::vector<std::string> options;
    std::size_t s = 0;
    while (s <= word.size()) {
      std::size_t slash = word.find('/', s);
      if (slash == std::string_view::npos) slash = word.size();
      options.emplace_back(word.substr(s, slash - s));
      s = slash + 1;
    }
    std::vector<std::string> next;
    for (const auto& v : variants) {
      for (const auto& o : options) next.push_back(v.empty() ? o : v + " " + o);
    }
    variants = std::move(next);
    pos = end + 1;
  }
  return variants;
}

struct CompiledIndicator {
  std::vector<std::string> fragments;
  /// Template ends in '?': only matches sentences that are questions.
  bool question = false;
};

/// Turns an indicator template into literal fragments to search for.
CompiledIndicator compile_indicator(std::string_view indicator) {
  CompiledIndicator out;
  const auto last = indicator.find_last_not_of(" \t");
  out.question = last != std::string_view::npos && indicator[last] == '?';

  std::string text = lower(indicator);
  std::string split;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '$') {
      const std::size_t close = text.find('$', i + 1);
      if (close != std::string::npos) {
        split += '\x01';
        i = close + 1;
        continue;
      }
    }
    if (text.compare(i, 3, "...") == 0 || text.compare(i, 3, "xxx") == 0) {
      split += '\x01';
      i += 3;
      continue;
    }
    split += text[i++];
  }

  std::size_t pos = 0;
  while (pos <= split.size()) {
    std::size_t end = split.find('\x01', pos);
    if (end == std::string::npos) end = split.size();
    const std::string_view piece = trim_piece(std::string_view(split).substr(pos, end - pos));
    if (!is_generic(piece)) {
      out.fragments = expand_alternatives(piece);
      break;
    }
    pos = end + 1;
  }
  return out;
}

bool contains_word_bounded(std::string_view haystack, std::string_view needle) {
  std::size_t at = haystack.find(needle);
  while (at != std::string_view::npos) {
    const bool left_ok = at == 0 || !is_word_char(needle.front()) || !is_word_char(haystack[at - 1]);
    const std::size_t after = at + needle.size();
    const bool right_ok = after >= haystack.size() || !is_word_char(needle.back()) ||
                          !is_word_char(haystack[after]);
    if (left_ok && right_ok) return true;
    at = haystack.find(needle, at + 1);
  }
  return false;
}

std::string normalize_sentence(std::string_view sentence) {
  std::string out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    // U+2019 right single quote -> ASCII apostrophe.
    if (sentence.compare(i, 3, "\xE2\x80\x99") == 0) {
      out += '\'';
      i += 2;
      continue;
    }
    const auto c = static_cast<unsigned char>(sentence[i]);
    if (std::isspace(c)) {
      if (!out.empty() && out.back() != ' ') out += ' ';
      continue;
    }
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string batch_payload(const AnnotationBatch& batch,
                          const std::function<AnnotationResult(std::size_t, const BatchItem&)>& label) {
  std::vector<AnnotationResult> results;
  results.reserve(batch.items.size());
  for (std::size_t i = 0; i < batch.items.size(); ++i) {
    results.push_back(label(i + 1, batch.items[i]));
  }
  return serialize_annotation_response(results);
}

}  // namespace

Episode hashed_episode(std::string_view text) noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return kAllEpisodes[h % kEpisodeCount];
}

MockAnnotator::MockAnnotator(LabelFn fn, std::string id) : fn_(std::move(fn)), id_(std::move(id)) {}

MockAnnotator MockAnnotator::hashed() {
  return MockAnnotator([](std::string_view, std::size_t, std::string_view text) {
    return hashed_episode(text);
  });
}

MockAnnotator MockAnnotator::from_table(
    std::map<std::string, std::vector<Episode>, std::less<>> table) {
  return MockAnnotator(
      [table = std::move(table)](std::string_view trace_id, std::size_t index,
                                 std::string_view text) {
        auto it = table.find(trace_id);
        if (it != table.end() && index < it->second.size()) return it->second[index];
        return hashed_episode(text);
      },
      "mock-table");
}

AnnotatorReply MockAnnotator::respond(const std::string& /*prompt*/, const AnnotationBatch& batch) {
  return {batch_payload(batch,
                        [&](std::size_t local, const BatchItem& item) {
                          return AnnotationResult{local, "mock label",
                                                  fn_(batch.trace_id, item.index, item.text)};
                        }),
          false};
}

KeywordMatch keyword_match(std::string_view sentence, const Guidebook& guidebook) {
  const std::string haystack = normalize_sentence(sentence);
  const auto last = haystack.find_last_not_of(' ');
  const bool is_question = last != std::string::npos && haystack[last] == '?';
  KeywordMatch best;
  std::size_t best_len = 0;
  for (const auto& entry : guidebook.entries()) {
    for (const auto& indicator : entry.indicators) {
      const CompiledIndicator compiled = compile_indicator(indicator);
      if (compiled.question && !is_question) continue;
      for (const auto& fragment : compiled.fragments) {
        if (fragment.size() > best_len && contains_word_bounded(haystack, fragment)) {
          best_len = fragment.size();
          best.episode = entry.episode;
          best.phrase = fragment;
        }
      }
    }
  }
  return best;
}

AnnotatorReply KeywordAnnotator::respond(const std::string& /*prompt*/,
                                         const AnnotationBatch& batch) {
  return {batch_payload(batch,
                        [&](std::size_t local, const BatchItem& item) {
                          KeywordMatch m = keyword_match(item.text, guidebook_);
                          std::string reason =
                              m.phrase.empty()
                                  ? std::string("no indicator matched; defaulting to Implement")
                                  : fmt::format("matched indicator \"{}\"", m.phrase);
                          return AnnotationResult{local, std::move(reason), m.episode};
                        }),
          false};
}

}  // namespace epitrace
