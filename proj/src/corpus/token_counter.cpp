#include "epitrace/corpus/token_counter.hpp"

#include <cctype>

namespace epitrace {

namespace {

bool is_space(unsigned char c) noexcept { return std::isspace(c) != 0; }

bool is_punct(unsigned char c) noexcept { return c < 0x80 && std::ispunct(c) != 0; }

}  // namespace

std::uint64_t count_default_tokens(std::string_view text) noexcept {
  std::uint64_t count = 0;
  bool in_word = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_space(c)) {
      in_word = false;
    } else if (is_punct(c)) {
      ++count;
      in_word = false;
    } else if (!in_word) {
      ++count;
      in_word = true;
    }
  }
  return count;
}

std::uint64_t count_whitespace_tokens(std::string_view text) noexcept {
  std::uint64_t count = 0;
  bool in_word = false;
  for (char ch : text) {
    if (is_space(static_cast<unsigned char>(ch))) {
      in_word = false;
    } else if (!in_word) {
      ++count;
      in_word = true;
    }
  }
  return count;
}

TokenCounter default_token_counter() { return TokenCounter("default", count_default_tokens); }

TokenCounter whitespace_token_counter() {
  return TokenCounter("whitespace", count_whitespace_tokens);
}

}  // namespace epitrace
