/**
 * @file annotate.hpp
 * @brief Batched, context-carrying annotation of traces.
 */

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epitrace/annotation/annotator.hpp"
#include "epitrace/annotation/guidebook.hpp"
#include "epitrace/corpus/trace.hpp"
#include "epitrace/error.hpp"

namespace epitrace {

struct AnnotateOptions {
  std::size_t batch_size = 20;
  /// Extra attempts per batch after a response that fails to parse.
  std::size_t retries = 2;
  /// Most recent labeled sentences shown as previous context; 0 = no cap.
  std::size_t context_limit = 100;
};

/// One annotator call.
struct BatchLogEntry {
  std::string trace_id;
  std::size_t batch = 0;
  std::size_t first_index = 0;
  std::size_t size = 0;
  std::size_t context_size = 0;
  std::size_t attempt = 0;
  bool from_cache = false;
  bool ok = false;
  std::string error;
};

struct TraceAnnotation {
  Trace trace;
  std::vector<BatchLogEntry> log;
  std::size_t retries_used = 0;
};

/// A batch exhausted its retries or the annotator failed in transport.
/// Sentences labeled before the failing batch keep their labels.
class TraceAnnotationFailed : public Error {
 public:
  TraceAnnotationFailed(const std::string& what, Trace partial, std::vector<BatchLogEntry> log)
      : Error(what), partial_(std::move(partial)), log_(std::move(log)) {}

  const Trace& partial() const noexcept { return partial_; }
  const std::vector<BatchLogEntry>& log() const noexcept { return log_; }

 private:
  Trace partial_;
  std::vector<BatchLogEntry> log_;
};

/// Labels every sentence of `trace`. Batches run in order; batch k sees
/// the labels of all earlier batches (windowed by context_limit).
TraceAnnotation annotate_trace(const Trace& trace, Annotator& annotator,
                               const Guidebook& guidebook, const AnnotateOptions& options = {});

struct FailedTrace {
  std::string trace_id;
  std::string message;
};

struct CorpusAnnotation {
  /// Successfully labeled traces, in input order.
  Corpus corpus;
  /// Every annotator call, grouped by trace in input order.
  std::vector<BatchLogEntry> log;
  std::vector<FailedTrace> failed;
};

/// Annotates traces on up to `parallelism` threads. Failed traces are
/// reported rather than thrown; the caller decides whether that is fatal.
CorpusAnnotation annotate_corpus(const Corpus& corpus, Annotator& annotator,
                                 const Guidebook& guidebook, const AnnotateOptions& options = {},
                                 std::size_t parallelism = 1);

}  // namespace epitrace
