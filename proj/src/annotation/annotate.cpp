#include "epitrace/annotation/annotate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "epitrace/annotation/prompt.hpp"
#include "epitrace/annotation/response.hpp"

namespace epitrace {

TraceAnnotation annotate_trace(const Trace& trace, Annotator& annotator,
                               const Guidebook& guidebook, const AnnotateOptions& options) {
  if (options.batch_size == 0) throw InputError("batch_size must be at least 1");

  TraceAnnotation out{trace, {}, 0};
  Trace& t = out.trace;
  for (auto& s : t.sentences) {
    s.episode.reset();
    s.rationale.reset();
  }

  const std::size_t n = t.sentences.size();
  std::size_t batch_no = 0;
  for (std::size_t start = 0; start < n; start += options.batch_size, ++batch_no) {
    const std::size_t end = std::min(n, start + options.batch_size);

    AnnotationBatch batch;
    batch.trace_id = t.trace_id;
    batch.question = t.question.value_or("");
    batch.context_start =
        options.context_limit == 0 || start <= options.context_limit ? 0 : start - options.context_limit;
    for (std::size_t i = batch.context_start; i < start; ++i) {
      batch.previous_context.push_back({t.sentences[i].text, *t.sentences[i].episode});
    }
    std::vector<std::size_t> expected;
    for (std::size_t i = start; i < end; ++i) {
      batch.items.push_back({i, t.sentences[i].text});
      expected.push_back(batch.items.size());
    }
    const std::string prompt = assemble_prompt(guidebook, batch);

    std::optional<std::vector<AnnotationResult>> results;
    for (std::size_t attempt = 0; attempt <= options.retries && !results; ++attempt) {
      BatchLogEntry entry{t.trace_id, batch_no, start, batch.size(), batch.previous_context.size(),
                          attempt, false, false, {}};
      if (attempt > 0) ++out.retries_used;
      AnnotatorReply reply;
      try {
        reply = annotator.respond(prompt, batch);
      } catch (const std::exception& e) {
        entry.error = e.what();
        out.log.push_back(entry);
        throw TraceAnnotationFailed(
            fmt::format("trace {}: annotator failed on batch {}: {}", t.trace_id, batch_no, e.what()),
            t, out.log);
      }
      entry.from_cache = reply.from_cache;
      try {
        results = parse_annotation_response(reply.text, expected);
        entry.ok = true;
      } catch (const AnnotationResponseError& e) {
        entry.error = e.what();
        annotator.reject(prompt);
      }
      out.log.push_back(std::move(entry));
    }
    if (!results) {
      throw TraceAnnotationFailed(
          fmt::format("trace {}: batch {} (sentences {}..{}) failed after {} attempts: {}",
                      t.trace_id, batch_no, start, end - 1, options.retries + 1,
                      out.log.back().error),
          t, out.log);
    }
    for (auto& r : *results) {
      auto& s = t.sentences[start + r.index - 1];
      s.episode = r.episode;
      s.rationale = std::move(r.rationale);
    }
  }
  return out;
}

CorpusAnnotation annotate_corpus(const Corpus& corpus, Annotator& annotator,
                                 const Guidebook& guidebook, const AnnotateOptions& options,
                                 std::size_t parallelism) {
  const std::size_t n = corpus.traces.size();
  struct Slot {
    std::optional<Trace> trace;
    std::vector<BatchLogEntry> log;
    std::optional<std::string> failure;
  };
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      Slot& slot = slots[i];
      try {
        TraceAnnotation ta = annotate_trace(corpus.traces[i], annotator, guidebook, options);
        slot.trace = std::move(ta.trace);
        slot.log = std::move(ta.log);
      } catch (const TraceAnnotationFailed& e) {
        slot.log = e.log();
        slot.failure = e.what();
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        next.store(n);
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  CorpusAnnotation out;
  out.corpus.source_label = corpus.source_label;
  out.corpus.warnings = corpus.warnings;
  for (std::size_t i = 0; i < n; ++i) {
    Slot& slot = slots[i];
    out.log.insert(out.log.end(), slot.log.begin(), slot.log.end());
    if (slot.failure) {
      out.failed.push_back({corpus.traces[i].trace_id, std::move(*slot.failure)});
    } else {
      out.corpus.traces.push_back(std::move(*slot.trace));
    }
  }
  return out;
}

}  // namespace epitrace
