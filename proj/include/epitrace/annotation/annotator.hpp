/**
 * @file annotator.hpp
 * @brief Pluggable sentence annotators.
 *
 * Every annotator answers a prompt with a JSON payload in the format the
 * prompt requests (items numbered from 1), so mock and heuristic
 * annotators exercise exactly the same parse/retry path as an LLM.
 * Implementations must be safe to call from several threads.
 */

#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/annotation/guidebook.hpp"
#include "epitrace/annotation/prompt.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

/// The annotator could not be reached or returned a transport-level error.
/// Not retried by annotate_trace.
class TransportError : public Error {
 public:
  using Error::Error;
};

struct AnnotatorReply {
  std::string text;
  bool from_cache = false;
};

class Annotator {
 public:
  virtual ~Annotator() = default;

  /// Identifies the labeling model; part of the response-cache key.
  virtual std::string id() const = 0;

  virtual AnnotatorReply respond(const std::string& prompt, const AnnotationBatch& batch) = 0;

  /// Called when the reply to `prompt` failed to parse, before a retry.
  virtual void reject(const std::string& /*prompt*/) {}
};

/// Deterministic stand-in for an LLM. Labels come from a caller-supplied
/// function of (trace_id, sentence index, sentence text).
class MockAnnotator final : public Annotator {
 public:
  using LabelFn = std::function<Episode(std::string_view trace_id, std::size_t index,
                                        std::string_view text)>;

  explicit MockAnnotator(LabelFn fn, std::string id = "mock");

  /// Label = FNV-1a hash of the sentence text modulo 8.
  static MockAnnotator hashed();

  /// Per-trace label lists; traces or indices the table does not cover
  /// fall back to the text hash.
  static MockAnnotator from_table(std::map<std::string, std::vector<Episode>, std::less<>> table);

  std::string id() const override { return id_; }
  AnnotatorReply respond(const std::string& prompt, const AnnotationBatch& batch) override;

 private:
  LabelFn fn_;
  std::string id_;
};

Episode hashed_episode(std::string_view text) noexcept;

struct KeywordMatch {
  Episode episode = Episode::Implement;
  /// Matched indicator fragment; empty when nothing matched.
  std::string phrase;
};

/// Baseline labeler: the episode whose indicator phrase has the longest
/// match in the sentence wins; ties go to the earlier episode; no match
/// falls back to Implement.
KeywordMatch keyword_match(std::string_view sentence, const Guidebook& guidebook);

inline Episode keyword_heuristic_annotator(std::string_view sentence, const Guidebook& guidebook) {
  return keyword_match(sentence, guidebook).episode;
}

class KeywordAnnotator final : public Annotator {
 public:
  explicit KeywordAnnotator(const Guidebook& guidebook) : guidebook_(guidebook) {}

  std::string id() const override { return "keyword"; }
  AnnotatorReply respond(const std::string& prompt, const AnnotationBatch& batch) override;

 private:
  Guidebook guidebook_;
};

}  // namespace epitrace
