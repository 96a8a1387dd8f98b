#include "epitrace/annotation/guidebook.hpp"

#include <fmt/format.h>

#include "epitrace/embedded_data.hpp"
#include "epitrace/error.hpp"
#include "epitrace/file_util.hpp"
#include "json.hpp"

namespace epitrace {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_array()) throw InputError(fmt::format("guidebook: '{}' must be an array", key));
  for (const auto& v : *it) {
    if (!v.is_string()) throw InputError(fmt::format("guidebook: '{}' must hold strings", key));
    out.push_back(v.get<std::string>());
  }
  return out;
}

void render_list(std::string& out, std::string_view title, const std::vector<std::string>& items) {
  if (items.empty()) return;
  out += fmt::format("- {}:\n", title);
  for (const auto& item : items) out += fmt::format("    - {}\n", item);
}

}  // namespace

const Guidebook& Guidebook::builtin() {
  static const Guidebook book = from_json(embedded::kGuidebookJson);
  return book;
}

Guidebook Guidebook::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("guidebook: invalid JSON ({})", e.what()));
  }
  if (!doc.is_object() || !doc.contains("episodes") || !doc["episodes"].is_array()) {
    throw InputError("guidebook: expected an object with an 'episodes' array");
  }

  Guidebook book;
  book.preamble_ = doc.value("preamble", std::string{});
  book.considerations_ = string_list(doc, "considerations");

  std::array<bool, kEpisodeCount> seen{};
  const auto& episodes = doc["episodes"];
  if (episodes.size() != kEpisodeCount) {
    throw InputError(fmt::format("guidebook: expected {} episode entries, found {}",
                                 kEpisodeCount, episodes.size()));
  }
  for (const auto& item : episodes) {
    const std::string name = item.value("name", std::string{});
    auto episode = parse_episode(name);
    if (!episode) throw InputError(fmt::format("guidebook: unknown episode '{}'", name));
    if (seen[index_of(*episode)]) {
      throw InputError(fmt::format("guidebook: duplicate entry for {}", episode_name(*episode)));
    }
    seen[index_of(*episode)] = true;

    GuidebookEntry& e = book.entries_[index_of(*episode)];
    e.episode = *episode;
    e.definition = item.value("definition", std::string{});
    e.guidelines = string_list(item, "guidelines");
    e.indicators = string_list(item, "indicators");
    e.indicator_notes = string_list(item, "indicator_notes");
    e.distinguishing = string_list(item, "distinguishing");
    e.notes = string_list(item, "notes");
    e.examples = string_list(item, "examples");
  }
  return book;
}

Guidebook Guidebook::load(const std::filesystem::path& path) {
  return from_json(read_file(path));
}

std::string Guidebook::render() const {
  std::string out;
  if (!preamble_.empty()) out += preamble_ + "\n\n";
  int number = 1;
  for (const auto& e : entries_) {
    out += fmt::format("{}. {}\n", number++, episode_name(e.episode));
    out += fmt::format("- Definition: {}\n", e.definition);
    render_list(out, "Guidelines", e.guidelines);
    if (!e.indicators.empty() || !e.indicator_notes.empty()) {
      std::string joined;
      for (const auto& p : e.indicators) {
        if (!joined.empty()) joined += ", ";
        joined += fmt::format("\"{}\"", p);
      }
      for (const auto& n : e.indicator_notes) {
        if (!joined.empty()) joined += ", ";
        joined += n;
      }
      out += fmt::format("- Potential Keywords/Indicators: {}\n", joined);
    }
    render_list(out, "Distinguishing Features", e.distinguishing);
    render_list(out, "Important Note", e.notes);
    render_list(out, "Example", e.examples);
    out += '\n';
  }
  if (!considerations_.empty()) {
    out += "Important Considerations:\n";
    for (const auto& c : considerations_) out += fmt::format("- {}\n", c);
  }
  return out;
}

}  // namespace epitrace
