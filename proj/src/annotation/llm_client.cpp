#include "epitrace/annotation/llm_client.hpp"

#include <fmt/format.h>

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace epitrace {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

LlmConfig LlmConfig::from_env() {
  LlmConfig c;
  c.endpoint = env_or_empty("EPITRACE_LLM_ENDPOINT");
  c.model = env_or_empty("EPITRACE_LLM_MODEL");
  c.api_key = env_or_empty("EPITRACE_LLM_API_KEY");
  if (c.endpoint.empty()) throw InputError("EPITRACE_LLM_ENDPOINT is not set");
  if (c.model.empty()) throw InputError("EPITRACE_LLM_MODEL is not set");
  return c;
}

LlmAnnotator::LlmAnnotator(LlmConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) throw InputError("LLM model name is empty");
  std::string url = config_.endpoint;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InputError(fmt::format("LLM endpoint must start with http:// or https://: {}", url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = (path_start == std::string::npos ? std::string() : url.substr(path_start)) +
          "/chat/completions";
}

AnnotatorReply LlmAnnotator::respond(const std::string& prompt, const AnnotationBatch& /*batch*/) {
  nlohmann::json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
  };

  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError(fmt::format("request to {}{} failed: {}", scheme_host_port_, path_,
                                     httplib::to_string(res.error())));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError(fmt::format("LLM endpoint returned HTTP {}: {}", res->status,
                                     res->body.substr(0, 500)));
  }
  try {
    const auto doc = nlohmann::json::parse(res->body);
    return {doc.at("choices").at(0).at("message").at("content").get<std::string>(), false};
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(fmt::format("unexpected LLM response body: {}", e.what()));
  }
}

}  // namespace epitrace
