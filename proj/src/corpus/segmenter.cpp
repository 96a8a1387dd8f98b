#include "epitrace/corpus/segmenter.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace epitrace {

namespace {

constexpr std::array<std::string_view, 19> kAbbreviations = {
    "e.g.", "i.e.",  "cf.",  "vs.",   "mr.",  "mrs.", "ms.", "dr.", "prof.", "fig.",
    "eq.",  "eqs.",  "approx.", "resp.", "no.", "sec.", "ch.", "st.", "viz.",
};

bool is_space(char c) noexcept { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Paragraphs are maximal groups of non-blank lines.
std::vector<std::string_view> split_paragraphs(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t para_begin = std::string_view::npos;
  std::size_t para_end = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (trim(line).empty()) {
      if (para_begin != std::string_view::npos) {
        out.push_back(text.substr(para_begin, para_end - para_begin));
        para_begin = std::string_view::npos;
      }
    } else {
      if (para_begin == std::string_view::npos) para_begin = pos;
      para_end = eol;
    }
    pos = eol + 1;
  }
  if (para_begin != std::string_view::npos) {
    out.push_back(text.substr(para_begin, para_end - para_begin));
  }
  return out;
}

bool escaped(std::string_view s, std::size_t i) noexcept {
  std::size_t backslashes = 0;
  while (i > 0 && s[i - 1] == '\\') {
    ++backslashes;
    --i;
  }
  return backslashes % 2 == 1;
}

void mark(std::vector<bool>& mask, std::size_t begin, std::size_t end) {
  std::fill(mask.begin() + static_cast<std::ptrdiff_t>(begin),
            mask.begin() + static_cast<std::ptrdiff_t>(end), true);
}

/// Positions inside a matched math span or bracket pair.
std::vector<bool> protected_mask(std::string_view p) {
  std::vector<bool> mask(p.size(), false);

  auto find_unescaped = [&](std::string_view needle, std::size_t from) {
    std::size_t at = p.find(needle, from);
    while (at != std::string_view::npos && escaped(p, at)) at = p.find(needle, at + 1);
    return at;
  };

  for (std::size_t i = 0; i < p.size();) {
    if (p[i] == '$' && !escaped(p, i)) {
      const bool display = i + 1 < p.size() && p[i + 1] == '$';
      const std::string_view delim = display ? "$$" : "$";
      const std::size_t close = find_unescaped(delim, i + delim.size());
      if (close != std::string_view::npos) {
        mark(mask, i, close + delim.size());
        i = close + delim.size();
        continue;
      }
    } else if (p[i] == '\\' && i + 1 < p.size() && (p[i + 1] == '(' || p[i + 1] == '[')) {
      const std::string_view close_delim = p[i + 1] == '(' ? "\\)" : "\\]";
      const std::size_t close = p.find(close_delim, i + 2);
      if (close != std::string_view::npos) {
        mark(mask, i, close + 2);
        i = close + 2;
        continue;
      }
    }
    ++i;
  }

  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mask[i]) continue;
    const char c = p[i];
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back(i);
    } else if (c == ')' || c == ']' || c == '}') {
      const char open = c == ')' ? '(' : (c == ']' ? '[' : '{');
      if (!stack.empty() && p[stack.back()] == open) {
        // Interior only; the closing bracket itself may precede a terminator.
        mark(mask, stack.back(), i);
        stack.pop_back();
      }
    }
  }
  return mask;
}

bool is_terminator(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

bool is_abbreviation(std::string_view p, std::size_t period) {
  std::size_t begin = period;
  while (begin > 0 && !is_space(p[begin - 1])) --begin;
  std::string word(p.substr(begin, period - begin + 1));
  const auto first = word.find_first_not_of("(\"'[");
  if (first == std::string::npos) return false;
  word.erase(0, first);
  std::transform(word.begin(), word.end(), word.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

/// Length of a closing quote at i ("'", '"', U+2019, U+201D) or 0.
std::size_t closing_quote_len(std::string_view p, std::size_t i) {
  if (p[i] == '"' || p[i] == '\'') return 1;
  if (p.substr(i, 3) == "\xE2\x80\x99" || p.substr(i, 3) == "\xE2\x80\x9D") return 3;
  return 0;
}

void segment_paragraph(std::string_view p, std::vector<std::string>& out) {
  const std::vector<bool> mask = protected_mask(p);
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < p.size()) {
    if (!is_terminator(p[i]) || mask[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < p.size() && is_terminator(p[j])) ++j;
    const bool single_period = p[i] == '.' && j == i + 1;
    while (j < p.size()) {
      const std::size_t q = closing_quote_len(p, j);
      if (q == 0) break;
      j += q;
    }
    std::size_t k = j;
    while (k < p.size() && is_space(p[k])) ++k;
    const bool boundary = k > j && k < p.size() &&
                          (std::isupper(static_cast<unsigned char>(p[k])) ||
                           std::isdigit(static_cast<unsigned char>(p[k]))) &&
                          !(single_period && is_abbreviation(p, i));
    if (boundary) {
      const std::string_view sentence = trim(p.substr(start, j - start));
      if (!sentence.empty()) out.emplace_back(sentence);
      start = k;
      i = k;
    } else {
      i = j;
    }
  }
  const std::string_view tail = trim(p.substr(std::min(start, p.size())));
  if (!tail.empty()) out.emplace_back(tail);
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view paragraph : split_paragraphs(text)) {
    segment_paragraph(paragraph, out);
  }
  return out;
}

ThinkAnswerSplit split_think_answer(std::string_view raw, const ThinkDelimiters& delimiters) {
  ThinkAnswerSplit out;
  const std::string_view open = delimiters.open;
  const std::string_view close = delimiters.close;
  const std::size_t open_at = open.empty() ? std::string_view::npos : raw.find(open);

  if (open_at != std::string_view::npos) {
    const std::size_t body = open_at + open.size();
    const std::size_t close_at = close.empty() ? std::string_view::npos : raw.find(close, body);
    if (close_at != std::string_view::npos) {
      out.think = trim(raw.substr(body, close_at - body));
      std::string rest(trim(raw.substr(0, open_at)));
      const std::string_view after = trim(raw.substr(close_at + close.size()));
      if (!rest.empty() && !after.empty()) rest += '\n';
      rest += after;
      out.answer = std::move(rest);
    } else {
      out.think = trim(raw.substr(body));
      out.answer = trim(raw.substr(0, open_at));
      out.warning = "unterminated think block: '" + std::string(open) +
                    "' without '" + std::string(close) + "'; remainder treated as think";
    }
    return out;
  }

  const std::size_t close_at = close.empty() ? std::string_view::npos : raw.find(close);
  if (close_at != std::string_view::npos) {
    out.think = trim(raw.substr(0, close_at));
    out.answer = trim(raw.substr(close_at + close.size()));
    out.warning = "'" + std::string(close) + "' without '" + std::string(open) +
                  "'; preceding text treated as think";
    return out;
  }

  out.answer = trim(raw);
  return out;
}

}  // namespace epitrace
