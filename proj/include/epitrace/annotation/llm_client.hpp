#pragma once

#include <chrono>
#include <string>

#include "epitrace/annotation/annotator.hpp"

namespace epitrace {

struct LlmConfig {
  /// Base URL of an OpenAI-compatible API, e.g. "https://host/v1".
  std::string endpoint;
  std::string model;
  std::string api_key;
  double temperature = 0.0;
  std::chrono::seconds timeout{120};

  /// Reads EPITRACE_LLM_ENDPOINT, EPITRACE_LLM_MODEL and
  /// EPITRACE_LLM_API_KEY. Throws InputError if endpoint or model is unset.
  static LlmConfig from_env();
};

/// Sends each prompt as a single user message to {endpoint}/chat/completions
/// and returns choices[0].message.content.
class LlmAnnotator final : public Annotator {
 public:
  explicit LlmAnnotator(LlmConfig config);

  std::string id() const override { return config_.model; }
  AnnotatorReply respond(const std::string& prompt, const AnnotationBatch& batch) override;

 private:
  LlmConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace epitrace
