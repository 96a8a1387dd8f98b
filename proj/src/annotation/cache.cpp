#include "epitrace/annotation/cache.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <sstream>

#include "epitrace/file_util.hpp"

namespace epitrace {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::string ResponseCache::key_for(std::string_view annotator_id, std::string_view prompt) {
  std::string material;
  material.reserve(annotator_id.size() + prompt.size() + 1);
  material += annotator_id;
  material += '\0';
  material += prompt;
  return sha256_hex(material);
}

fs::path ResponseCache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".txt");
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResponseCache::put(const std::string& key, std::string_view value) const {
  write_file_atomic(path_for(key), value);
}

void ResponseCache::erase(const std::string& key) const {
  std::error_code ec;
  fs::remove(path_for(key), ec);
}

AnnotatorReply CachingAnnotator::respond(const std::string& prompt, const AnnotationBatch& batch) {
  const std::string key = ResponseCache::key_for(inner_.id(), prompt);
  if (auto hit = cache_.get(key)) {
    cache_hits_.fetch_add(1);
    return {std::move(*hit), true};
  }
  upstream_calls_.fetch_add(1);
  AnnotatorReply reply = inner_.respond(prompt, batch);
  cache_.put(key, reply.text);
  reply.from_cache = false;
  return reply;
}

void CachingAnnotator::reject(const std::string& prompt) {
  cache_.erase(ResponseCache::key_for(inner_.id(), prompt));
  inner_.reject(prompt);
}

}  // namespace epitrace
