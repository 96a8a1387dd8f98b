#pragma once

#include <string_view>

// Data files under data/ compiled into the library so the tools work
// without a runtime data path.
namespace epitrace::embedded {

extern const std::string_view kGuidebookJson;
extern const std::string_view kStopwords;

}  // namespace epitrace::embedded
