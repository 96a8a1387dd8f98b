#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/diagnostics/lasso.hpp"
#include "epitrace/diagnostics/standardize.hpp"

namespace epitrace {

/// Everything needed to score a new trace: the fitted weights plus the
/// standardization they were fitted under.
struct DiagnosticModel {
  std::vector<std::string> feature_names;
  StandardizationParams standardization;
  LassoConfig config;
  LassoModel model;
  std::size_t training_rows = 0;
};

std::string diagnostic_model_to_json(const DiagnosticModel& m);
/// Throws InputError on a malformed or inconsistent document.
DiagnosticModel diagnostic_model_from_json(std::string_view text);

void save_diagnostic_model(const std::filesystem::path& path, const DiagnosticModel& m);
DiagnosticModel load_diagnostic_model(const std::filesystem::path& path);

}  // namespace epitrace
