#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace epitrace {

/// Writes `content` to a uniquely named sibling temp file, then renames it
/// over `path`. Readers never observe a partially written file. Parent
/// directories are created as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace epitrace
