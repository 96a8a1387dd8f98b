#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/analytics/sequence.hpp"
#include "epitrace/corpus/trace.hpp"

namespace epitrace::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path fixture_dir();

/// Labeled trace from episode codes ("R N I"). Sentence i gets
/// tokens[i] tokens (1 each when `tokens` is empty); the first
/// `think_count` sentences are think-segment.
Trace make_trace(std::string id, std::string_view codes, std::vector<std::uint64_t> tokens = {},
                 std::size_t think_count = 0, std::string model_id = "m",
                 ModelClass cls = ModelClass::Reasoning);

EpisodeSequence random_sequence(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                                std::size_t alphabet = 8);

/// Random labeled trace with positive token counts.
Trace random_trace(std::mt19937_64& rng, std::string id, std::size_t min_sentences,
                   std::size_t max_sentences, std::uint64_t max_tokens = 40);

/// Labeled traces whose correctness depends on one episode's token share:
/// in correct traces every sentence of `planted` carries `boost` times its
/// usual tokens. Sentence counts vary widely so total length carries no
/// signal. Half the traces are correct.
Corpus planted_corpus(std::uint64_t seed, std::size_t traces = 200, Episode planted = Episode::Verify,
                      std::uint64_t boost = 2);

/// Runs the CLI in-process; returns the exit code and captured streams.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args);

std::string slurp(const std::filesystem::path& p);
void spit(const std::filesystem::path& p, std::string_view content);

}  // namespace epitrace::testing
