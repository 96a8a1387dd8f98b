/**
 * @file guidebook.hpp
 * @brief Per-episode definitions, guidelines and indicator phrases.
 *
 * The guidebook is data: it is loaded from JSON (data/guidebook.json is
 * compiled in as the default) and rendered verbatim into annotation
 * prompts. The keyword baseline annotator reads its indicator phrases.
 */

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/episode.hpp"

namespace epitrace {

struct GuidebookEntry {
  Episode episode = Episode::Read;
  std::string definition;
  std::vector<std::string> guidelines;
  /// Phrase templates, "..." marks elided text, $...$ marks math.
  std::vector<std::string> indicators;
  /// Descriptive cues that are not literal phrases.
  std::vector<std::string> indicator_notes;
  std::vector<std::string> distinguishing;
  std::vector<std::string> notes;
  std::vector<std::string> examples;
};

class Guidebook {
 public:
  /// The compiled-in default guidebook.
  static const Guidebook& builtin();

  /// Throws InputError unless there is exactly one entry per episode.
  static Guidebook from_json(std::string_view text);
  static Guidebook load(const std::filesystem::path& path);

  const std::string& preamble() const noexcept { return preamble_; }
  const GuidebookEntry& entry(Episode e) const noexcept { return entries_[index_of(e)]; }
  /// Ordered by Episode.
  const std::array<GuidebookEntry, kEpisodeCount>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& considerations() const noexcept { return considerations_; }

  /// Plain-text rendering embedded in annotation prompts.
  std::string render() const;

 private:
  std::string preamble_;
  std::array<GuidebookEntry, kEpisodeCount> entries_{};
  std::vector<std::string> considerations_;
};

}  // namespace epitrace
