#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "epitrace/annotation/annotator.hpp"

namespace epitrace {

/// SHA-256 hex digest.
std::string sha256_hex(std::string_view data);

/// Content-addressed response store: one file per (model id, prompt).
/// Writes go through a rename, so concurrent readers and writers only ever
/// see complete entries.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  static std::string key_for(std::string_view annotator_id, std::string_view prompt);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, std::string_view value) const;
  void erase(const std::string& key) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

/// Serves replies from a ResponseCache and forwards misses to the wrapped
/// annotator.
class CachingAnnotator final : public Annotator {
 public:
  CachingAnnotator(Annotator& inner, const ResponseCache& cache) : inner_(inner), cache_(cache) {}

  std::string id() const override { return inner_.id(); }
  AnnotatorReply respond(const std::string& prompt, const AnnotationBatch& batch) override;
  /// Drops the cached entry so the retry reaches the wrapped annotator.
  void reject(const std::string& prompt) override;

  std::uint64_t upstream_calls() const noexcept { return upstream_calls_.load(); }
  std::uint64_t cache_hits() const noexcept { return cache_hits_.load(); }

 private:
  Annotator& inner_;
  const ResponseCache& cache_;
  std::atomic<std::uint64_t> upstream_calls_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
};

}  // namespace epitrace
