#include "epitrace/diagnostics/model_io.hpp"

#include <fmt/format.h>

#include "epitrace/error.hpp"
#include "epitrace/file_util.hpp"
#include "json.hpp"

namespace epitrace {

using nlohmann::ordered_json;

std::string diagnostic_model_to_json(const DiagnosticModel& m) {
  ordered_json doc;
  doc["format"] = "epitrace-lasso-v1";
  doc["config"] = {{"C", m.config.C}, {"max_iter", m.config.max_iter}, {"tol", m.config.tol}};
  doc["training_rows"] = m.training_rows;
  doc["converged"] = m.model.converged;
  doc["iterations"] = m.model.iterations;
  doc["final_objective"] = m.model.final_objective;
  doc["intercept"] = m.model.intercept;
  ordered_json features = ordered_json::array();
  for (std::size_t j = 0; j < m.feature_names.size(); ++j) {
    features.push_back({
        {"name", m.feature_names[j]},
        {"weight", m.model.weights[j]},
        {"mean", m.standardization.mean[j]},
        {"std", m.standardization.stddev[j]},
        {"constant", static_cast<bool>(m.standardization.constant[j])},
    });
  }
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

DiagnosticModel diagnostic_model_from_json(std::string_view text) {
  DiagnosticModel m;
  try {
    const auto doc = ordered_json::parse(text);
    if (doc.value("format", "") != "epitrace-lasso-v1") {
      throw InputError("model file has an unknown format tag");
    }
    const auto& cfg = doc.at("config");
    m.config.C = cfg.at("C").get<double>();
    m.config.max_iter = cfg.at("max_iter").get<int>();
    m.config.tol = cfg.at("tol").get<double>();
    m.training_rows = doc.at("training_rows").get<std::size_t>();
    m.model.converged = doc.at("converged").get<bool>();
    m.model.iterations = doc.at("iterations").get<int>();
    m.model.final_objective = doc.at("final_objective").get<double>();
    m.model.intercept = doc.at("intercept").get<double>();
    for (const auto& f : doc.at("features")) {
      m.feature_names.push_back(f.at("name").get<std::string>());
      m.model.weights.push_back(f.at("weight").get<double>());
      m.standardization.mean.push_back(f.at("mean").get<double>());
      m.standardization.stddev.push_back(f.at("std").get<double>());
      m.standardization.constant.push_back(f.at("constant").get<bool>());
    }
  } catch (const ordered_json::exception& e) {
    throw InputError(fmt::format("malformed model file: {}", e.what()));
  }
  return m;
}

void save_diagnostic_model(const std::filesystem::path& path, const DiagnosticModel& m) {
  write_file_atomic(path, diagnostic_model_to_json(m));
}

DiagnosticModel load_diagnostic_model(const std::filesystem::path& path) {
  try {
    return diagnostic_model_from_json(read_file(path));
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace epitrace
