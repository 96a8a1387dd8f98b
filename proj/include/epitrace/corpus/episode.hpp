/**
 * @file episode.hpp
 * @brief The eight-way episode taxonomy and its single-letter codes.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace epitrace {

/// Functional category of one sentence in a reasoning trace.
///
/// The enumerator order is the canonical order used everywhere: table
/// columns, feature vectors, guidebook entries and tie-breaking.
enum class Episode : std::uint8_t {
  Read,
  Analyze,
  Plan,
  Implement,
  Explore,
  Verify,
  Monitor,
  Answer,
};

inline constexpr std::size_t kEpisodeCount = 8;

inline constexpr std::array<Episode, kEpisodeCount> kAllEpisodes = {
    Episode::Read,    Episode::Analyze, Episode::Plan,    Episode::Implement,
    Episode::Explore, Episode::Verify,  Episode::Monitor, Episode::Answer,
};

constexpr std::size_t index_of(Episode e) noexcept { return static_cast<std::size_t>(e); }

/// Canonical name, e.g. "Analyze".
std::string_view episode_name(Episode e) noexcept;

/// Lower-case name used in feature and file identifiers, e.g. "analyze".
std::string_view episode_slug(Episode e) noexcept;

/// Single-letter code. Analyze is 'N' and Answer is 'A'; the rest use
/// their first letter.
char episode_code(Episode e) noexcept;

/// Case-insensitive match against the canonical names. Surrounding
/// whitespace is ignored.
std::optional<Episode> parse_episode(std::string_view name) noexcept;

std::optional<Episode> episode_from_code(char code) noexcept;

}  // namespace epitrace
