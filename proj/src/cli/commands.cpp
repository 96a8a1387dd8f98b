#include "epitrace/cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cstdlib>
#include <map>
#include <memory>
#include <set>

#include "epitrace/analytics/allocation.hpp"
#include "epitrace/analytics/lexical.hpp"
#include "epitrace/analytics/mutual_information.hpp"
#include "epitrace/analytics/sequence.hpp"
#include "epitrace/analytics/temporal.hpp"
#include "epitrace/annotation/agreement.hpp"
#include "epitrace/annotation/cache.hpp"
#include "epitrace/annotation/llm_client.hpp"
#include "epitrace/cli/reports.hpp"
#include "epitrace/diagnostics/features.hpp"
#include "epitrace/diagnostics/model_io.hpp"
#include "epitrace/diagnostics/sampling.hpp"
#include "epitrace/diagnostics/standardize.hpp"
#include "epitrace/file_util.hpp"
#include "json.hpp"

namespace epitrace::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Corpus load(const fs::path& path, const InputConfig& input) {
  return load_corpus(path, input.load_options());
}

Corpus load_all(const std::vector<fs::path>& paths, const InputConfig& input) {
  if (paths.empty()) throw InputError("no input corpus given");
  Corpus merged = load(paths.front(), input);
  std::set<std::string, std::less<>> ids;
  for (const auto& t : merged.traces) ids.insert(t.trace_id);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    Corpus next = load(paths[i], input);
    for (auto& t : next.traces) {
      if (!ids.insert(t.trace_id).second) {
        throw InputError(fmt::format("{}: duplicate trace_id {} across input files", paths[i].string(), t.trace_id));
      }
      merged.traces.push_back(std::move(t));
    }
    merged.warnings.insert(merged.warnings.end(), next.warnings.begin(), next.warnings.end());
  }
  return merged;
}

void print_warnings(const Corpus& c, std::ostream& log) {
  for (const auto& w : c.warnings) log << "warning: " << w << "\n";
}

std::map<std::string, std::vector<Episode>, std::less<>> load_mock_table(const fs::path& path) {
  std::map<std::string, std::vector<Episode>, std::less<>> table;
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
  if (!doc.is_object()) throw InputError(fmt::format("{}: expected a JSON object", path.string()));
  for (const auto& [id, labels] : doc.items()) {
    std::vector<Episode> seq;
    if (labels.is_string()) {
      seq = parse_sequence(labels.get<std::string>()).letters;
    } else if (labels.is_array()) {
      for (const auto& l : labels) {
        auto e = l.is_string() ? parse_episode(l.get<std::string>()) : std::nullopt;
        if (!e) throw InputError(fmt::format("{}: bad label for trace {}: {}", path.string(), id, l.dump()));
        seq.push_back(*e);
      }
    } else {
      throw InputError(fmt::format("{}: labels for trace {} must be a string or array", path.string(), id));
    }
    table.emplace(id, std::move(seq));
  }
  return table;
}

std::string log_jsonl(const CorpusAnnotation& result) {
  std::string out;
  for (const auto& e : result.log) {
    ordered_json j;
    j["trace_id"] = e.trace_id;
    j["batch"] = e.batch;
    j["first_index"] = e.first_index;
    j["size"] = e.size;
    j["context"] = e.context_size;
    j["attempt"] = e.attempt;
    j["from_cache"] = e.from_cache;
    j["ok"] = e.ok;
    if (!e.ok) j["error"] = e.error;
    out += j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) + "\n";
  }
  for (const auto& f : result.failed) {
    ordered_json j;
    j["trace_id"] = f.trace_id;
    j["status"] = "failed";
    j["message"] = f.message;
    out += j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) + "\n";
  }
  return out;
}

}  // namespace

LoadOptions InputConfig::load_options() const {
  if (think_open.empty() || think_close.empty()) throw InputError("think delimiters must be non-empty");
  LoadOptions o;
  o.delimiters = {think_open, think_close};
  if (tokenizer == "default") {
    o.counter = default_token_counter();
  } else if (tokenizer == "whitespace") {
    o.counter = whitespace_token_counter();
  } else {
    throw InputError(fmt::format("unknown tokenizer '{}'", tokenizer));
  }
  return o;
}

AnnotateSummary cmd_annotate(const AnnotateConfig& config, std::ostream& log) {
  const Corpus corpus = load(config.input, config.input_options);
  print_warnings(corpus, log);
  const Guidebook guidebook = config.guidebook ? Guidebook::load(*config.guidebook) : Guidebook::builtin();

  std::unique_ptr<Annotator> base;
  if (config.annotator == "mock") {
    base = std::make_unique<MockAnnotator>(config.mock_table
                                               ? MockAnnotator::from_table(load_mock_table(*config.mock_table))
                                               : MockAnnotator::hashed());
  } else if (config.annotator == "keyword") {
    base = std::make_unique<KeywordAnnotator>(guidebook);
  } else if (config.annotator == "llm") {
    LlmConfig llm;
    llm.endpoint = config.llm_endpoint.value_or("");
    llm.model = config.llm_model.value_or("");
    if (llm.endpoint.empty() || llm.model.empty()) {
      const LlmConfig env = LlmConfig::from_env();
      if (llm.endpoint.empty()) llm.endpoint = env.endpoint;
      if (llm.model.empty()) llm.model = env.model;
      llm.api_key = env.api_key;
    } else if (const char* key = std::getenv("EPITRACE_LLM_API_KEY")) {
      llm.api_key = key;
    }
    llm.timeout = std::chrono::seconds(config.llm_timeout_s);
    base = std::make_unique<LlmAnnotator>(std::move(llm));
  } else {
    throw InputError(fmt::format("unknown annotator '{}'", config.annotator));
  }

  std::optional<ResponseCache> cache;
  std::unique_ptr<CachingAnnotator> caching;
  Annotator* annotator = base.get();
  if (config.use_cache) {
    cache.emplace(config.cache_dir.value_or(config.out_dir / "cache"));
    caching = std::make_unique<CachingAnnotator>(*base, *cache);
    annotator = caching.get();
  }

  CorpusAnnotation result = annotate_corpus(corpus, *annotator, guidebook, config.options, config.jobs);

  AnnotateSummary s;
  s.failed = result.failed;
  s.traces = result.corpus.traces.size();
  for (const auto& t : result.corpus.traces) s.sentences += t.sentences.size();
  for (const auto& e : result.log) {
    if (e.from_cache) {
      ++s.cache_hits;
    } else {
      ++s.annotator_calls;
    }
    if (e.attempt > 0) ++s.retries;
  }

  fs::create_directories(config.out_dir);
  write_file_atomic(config.out_dir / "annotation_log.jsonl", log_jsonl(result));
  const fs::path annotated = config.out_dir / "annotated.jsonl";

  log << fmt::format("annotated {} traces ({} sentences); annotator calls: {}; cache hits: {}; retries: {}; failed: {}\n",
                     s.traces, s.sentences, s.annotator_calls, s.cache_hits, s.retries, s.failed.size());
  for (const auto& f : s.failed) log << "failed: " << f.message << "\n";

  if (!s.failed.empty() && !config.skip_failed) {
    std::error_code ec;
    fs::remove(annotated, ec);
    std::vector<std::string> ids;
    for (const auto& f : s.failed) ids.push_back(f.trace_id);
    throw Error(fmt::format("annotation failed for {} trace(s): {}", ids.size(), fmt::join(ids, ", ")));
  }
  save_corpus(result.corpus, annotated);
  return s;
}

void cmd_evaluate(const EvaluateConfig& config, std::ostream& log) {
  if (config.predicted.empty()) throw InputError("no predicted corpus given");
  const Corpus gold = load(config.gold, config.input_options);
  std::set<std::string> stems;
  for (const auto& p : config.predicted) stems.insert(p.stem().string());
  const bool unique_stems = stems.size() == config.predicted.size();

  std::vector<AgreementRun> runs;
  for (const auto& p : config.predicted) {
    const Corpus pred = load(p, config.input_options);
    AgreementRun r{unique_stems ? p.stem().string() : p.string(), {}};
    try {
      r.report = evaluate_agreement(pred, gold);
    } catch (const AlignmentError& e) {
      throw AlignmentError(fmt::format("{} vs {}: {}", p.string(), config.gold.string(), e.what()));
    }
    log << fmt::format("{}: accuracy {}%, kappa {} over {} sentences\n", r.run,
                       fixed(100.0 * r.report.overall.accuracy, 2),
                       r.report.overall.kappa_defined ? fixed(100.0 * r.report.overall.kappa, 2) + "%" : "NA",
                       r.report.overall.n);
    runs.push_back(std::move(r));
  }
  fs::create_directories(config.out_dir);
  write_file_atomic(config.out_dir / "agreement.csv", agreement_csv(runs));
}

void cmd_analyze(const AnalyzeConfig& config, std::ostream& log) {
  if (config.bins == 0) throw InputError("--bins must be positive");
  if (config.top_k == 0) throw InputError("--top-k must be positive");
  const Corpus corpus = load_all(config.inputs, config.input_options);
  print_warnings(corpus, log);
  if (corpus.traces.empty()) throw InputError("the input holds no traces");
  const Stopwords stopwords = config.stopwords ? Stopwords::load(*config.stopwords) : Stopwords::builtin();

  std::vector<ModelAllocation> allocation;
  std::vector<std::pair<std::string, TemporalSummary>> temporal;
  for (const auto& [model, traces] : group_by_model(corpus)) {
    allocation.push_back({model, std::string(model_class_name(traces.front().model_class)),
                          allocation_profile(traces, config.segment)});
    temporal.emplace_back(model, temporal_summary(traces, config.bins, config.segment));
  }
  std::map<Episode, std::vector<TokenCount>> lexical;
  for (Episode e : kAllEpisodes) {
    lexical[e] = lexical_profile(corpus.traces, e, config.top_k, stopwords, config.segment);
  }

  fs::create_directories(config.out_dir);
  write_file_atomic(config.out_dir / "allocation.csv", allocation_csv(allocation));
  write_file_atomic(config.out_dir / "temporal.csv", temporal_csv(temporal));
  write_file_atomic(config.out_dir / "lexical.csv", lexical_csv(lexical));
  log << fmt::format("analyzed {} traces from {} model(s); segment: {}; bins: {}\n", corpus.traces.size(),
                     allocation.size(), segment_filter_name(config.segment), config.bins);
}

void cmd_compare(const CompareConfig& config, std::ostream& log) {
  if (config.top_k == 0) throw InputError("--top-k must be positive");
  if (config.ngram_sizes.empty()) throw InputError("at least one n-gram size is required");
  for (std::size_t n : config.ngram_sizes) {
    if (n == 0) throw InputError("n-gram sizes must be positive");
  }
  const Corpus a = load(config.corpus_a, config.input_options);
  const Corpus b = load(config.corpus_b, config.input_options);
  print_warnings(a, log);
  print_warnings(b, log);
  const std::string label_a = config.label_a.value_or(a.source_label);
  const std::string label_b = config.label_b.value_or(b.source_label);
  if (label_a == label_b) {
    throw InputError(fmt::format("group labels must differ (both are '{}')", label_a));
  }
  if (a.traces.empty()) throw InputError(fmt::format("group {} is empty", label_a));
  if (b.traces.empty()) throw InputError(fmt::format("group {} is empty", label_b));

  RankOptions opts;
  opts.n_values = config.ngram_sizes;
  opts.top_k = config.top_k;
  const auto ranking = rank_discriminative_patterns(a, b, opts, config.segment_a, config.segment_b);
  const AllocationProfile pa = allocation_profile(a, config.segment_a);
  const AllocationProfile pb = allocation_profile(b, config.segment_b);

  fs::create_directories(config.out_dir);
  write_file_atomic(config.out_dir / "mi_ranking.csv", mi_csv(ranking, label_a, label_b));
  write_file_atomic(config.out_dir / "allocation_delta.csv", allocation_delta_csv(pa, pb));
  log << fmt::format("compared {} ({} traces) with {} ({} traces); top pattern: {}\n", label_a,
                     a.traces.size(), label_b, b.traces.size(),
                     ranking.empty() ? std::string("none")
                                     : fmt::format("{} ({} bits)", ranking.front().pattern_text,
                                                   fixed(ranking.front().mi, 4)));
}

void cmd_diagnose(const DiagnoseConfig& config, std::ostream& log) {
  const Corpus corpus = load_all(config.inputs, config.input_options);
  print_warnings(corpus, log);
  std::vector<Trace> labeled;
  for (const auto& t : corpus.traces) {
    if (t.correctness) labeled.push_back(t);
  }
  const std::size_t skipped = corpus.traces.size() - labeled.size();
  if (labeled.size() < 2) {
    throw InputError(fmt::format("need at least 2 traces with correctness labels, found {}", labeled.size()));
  }

  const FeatureMatrix fm = extract_feature_matrix(labeled);
  Eigen::VectorXd y(static_cast<Eigen::Index>(labeled.size()));
  for (std::size_t i = 0; i < labeled.size(); ++i) y(static_cast<Eigen::Index>(i)) = *fm.labels[i] ? 1.0 : 0.0;

  const Standardized z = standardize(fm.X);
  DiagnosticModel dm;
  dm.feature_names = feature_names();
  dm.standardization = z.params;
  dm.config = config.lasso;
  dm.model = fit_lasso_logistic(z.X, y, config.lasso, z.params.constant);
  dm.training_rows = labeled.size();
  const CoefficientReport report = coefficient_report(dm.model, dm.feature_names);

  fs::create_directories(config.out_dir);
  write_file_atomic(config.out_dir / "coefficients.csv", coefficients_csv(report));
  write_file_atomic(config.out_dir / "features.csv", features_csv(fm));
  save_diagnostic_model(config.out_dir / "model.json", dm);

  std::size_t constant = 0;
  for (bool c : z.params.constant) constant += c;
  log << fmt::format(
      "fitted on {} traces ({} without correctness skipped); {} constant features excluded; "
      "{} positive, {} negative contributors; {} after {} iterations\n",
      labeled.size(), skipped, constant, report.positive.size(), report.negative.size(),
      dm.model.converged ? "converged" : "not converged", dm.model.iterations);
}

void cmd_stratify(const StratifyConfig& config, std::ostream& log) {
  if (config.sample_size == 0) throw InputError("--size must be positive");
  const Corpus corpus = load(config.input, config.input_options);
  print_warnings(corpus, log);
  const auto picked = stratified_sample(corpus, config.sample_size, config.seed);
  Corpus out;
  out.source_label = corpus.source_label;
  for (std::size_t i : picked) out.traces.push_back(corpus.traces[i]);
  fs::create_directories(config.out_dir);
  save_corpus(out, config.out_dir / "stratified.jsonl");
  log << fmt::format("sampled {} of {} traces (seed {})\n", out.traces.size(), corpus.traces.size(),
                     config.seed);
}

}  // namespace epitrace::cli
