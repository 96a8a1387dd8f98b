#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace epitrace {

/// Named, deterministic text -> token count rule. Analytics are dominated
/// by ratios, so any consistent counter works; swap in a BPE-backed one to
/// match a specific model's accounting.
class TokenCounter {
 public:
  using CountFn = std::function<std::uint64_t(std::string_view)>;

  TokenCounter(std::string name, CountFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const noexcept { return name_; }
  std::uint64_t operator()(std::string_view text) const { return fn_(text); }

 private:
  std::string name_;
  CountFn fn_;
};

/// Whitespace-delimited runs, each further split so that every ASCII
/// punctuation character is its own token and the alphanumeric stretches
/// between them are tokens. Bytes >= 0x80 count as word characters.
///
///   "x+1 = 2" -> x | + | 1 | = | 2 -> 5
std::uint64_t count_default_tokens(std::string_view text) noexcept;

/// Plain whitespace split.
std::uint64_t count_whitespace_tokens(std::string_view text) noexcept;

TokenCounter default_token_counter();
TokenCounter whitespace_token_counter();

inline std::uint64_t count_tokens(std::string_view text, const TokenCounter& counter) {
  return counter(text);
}

}  // namespace epitrace
