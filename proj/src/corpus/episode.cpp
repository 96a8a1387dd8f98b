#include "epitrace/corpus/episode.hpp"

#include <cctype>

namespace epitrace {

namespace {

constexpr std::array<std::string_view, kEpisodeCount> kNames = {
    "Read", "Analyze", "Plan", "Implement", "Explore", "Verify", "Monitor", "Answer",
};
constexpr std::array<std::string_view, kEpisodeCount> kSlugs = {
    "read", "analyze", "plan", "implement", "explore", "verify", "monitor", "answer",
};
constexpr std::array<char, kEpisodeCount> kCodes = {'R', 'N', 'P', 'I', 'E', 'V', 'M', 'A'};

bool iequals(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view episode_name(Episode e) noexcept { return kNames[index_of(e)]; }

std::string_view episode_slug(Episode e) noexcept { return kSlugs[index_of(e)]; }

char episode_code(Episode e) noexcept { return kCodes[index_of(e)]; }

std::optional<Episode> parse_episode(std::string_view name) noexcept {
  name = trim(name);
  for (Episode e : kAllEpisodes) {
    if (iequals(name, kNames[index_of(e)])) return e;
  }
  return std::nullopt;
}

std::optional<Episode> episode_from_code(char code) noexcept {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(code)));
  for (Episode e : kAllEpisodes) {
    if (kCodes[index_of(e)] == upper) return e;
  }
  return std::nullopt;
}

}  // namespace epitrace
