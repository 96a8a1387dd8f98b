#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epitrace/corpus/episode.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

struct AnnotationResult {
  std::size_t index = 0;
  std::string rationale;
  Episode episode = Episode::Read;

  bool operator==(const AnnotationResult&) const = default;
};

/// Any defect in an annotator payload. Retryable.
class AnnotationResponseError : public Error {
 public:
  using Error::Error;
};

class MalformedResponse : public AnnotationResponseError {
 public:
  using AnnotationResponseError::AnnotationResponseError;
};

class IndexMismatch : public AnnotationResponseError {
 public:
  IndexMismatch(std::vector<std::size_t> missing, std::vector<std::size_t> extra,
                std::vector<std::size_t> duplicate);

  const std::vector<std::size_t>& missing() const noexcept { return missing_; }
  const std::vector<std::size_t>& extra() const noexcept { return extra_; }
  const std::vector<std::size_t>& duplicate() const noexcept { return duplicate_; }

 private:
  std::vector<std::size_t> missing_;
  std::vector<std::size_t> extra_;
  std::vector<std::size_t> duplicate_;
};

class UnknownLabel : public AnnotationResponseError {
 public:
  explicit UnknownLabel(std::vector<std::string> labels);
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Parses {"sentences": [{"index", "reason", "category"}, ...]}.
///
/// Tolerates surrounding prose and ``` fences, single-quoted (Python
/// literal) payloads and string-typed indices. Returns one result per
/// expected index, sorted ascending; categories are matched
/// case-insensitively.
std::vector<AnnotationResult> parse_annotation_response(std::string_view text,
                                                        std::span<const std::size_t> expected);

/// Canonical JSON payload; parse_annotation_response accepts it back.
std::string serialize_annotation_response(std::span<const AnnotationResult> results);

}  // namespace epitrace
