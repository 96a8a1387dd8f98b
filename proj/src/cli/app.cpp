#include "epitrace/cli/app.hpp"

#include <fmt/format.h>

#include <functional>
#include <map>

#include "CLI11.hpp"
#include "epitrace/cli/commands.hpp"

namespace epitrace::cli {

namespace {

const std::map<std::string, SegmentFilter> kSegments = {
    {"all", SegmentFilter::All}, {"think", SegmentFilter::Think}, {"answer", SegmentFilter::Answer}};

void add_input_options(CLI::App* cmd, InputConfig& in) {
  cmd->add_option("--think-open", in.think_open, "Opening think delimiter for raw responses")
      ->capture_default_str();
  cmd->add_option("--think-close", in.think_close, "Closing think delimiter for raw responses")
      ->capture_default_str();
  cmd->add_option("--tokenizer", in.tokenizer, "Token counter for raw text")
      ->check(CLI::IsMember({"default", "whitespace"}))
      ->capture_default_str();
}

CLI::Option* add_segment(CLI::App* cmd, const std::string& name, SegmentFilter& target,
                         const std::string& help) {
  return cmd->add_option(name, target, help)
      ->transform(CLI::CheckedTransformer(kSegments, CLI::ignore_case))
      ->default_str("all");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentence-level episode annotation and analytics for reasoning traces", "epitrace"};
  app.set_config("--config", "", "TOML or INI file with option values; flags override it");
  app.require_subcommand(1);
  app.set_version_flag("--version", "epitrace 1.0.0");

  AnnotateConfig annotate;
  auto* c_annotate = app.add_subcommand("annotate", "Label every sentence of a corpus");
  add_input_options(c_annotate, annotate.input_options);
  c_annotate->add_option("input", annotate.input, "Corpus file (one JSON trace per line)")
      ->required()->check(CLI::ExistingFile);
  c_annotate->add_option("-o,--out-dir", annotate.out_dir, "Output directory")->capture_default_str();
  c_annotate->add_option("--annotator", annotate.annotator, "Labeler to use")
      ->check(CLI::IsMember({"mock", "keyword", "llm"}))->capture_default_str();
  c_annotate->add_option("--mock-table", annotate.mock_table,
                         "JSON object mapping trace_id to labels for the mock annotator")
      ->check(CLI::ExistingFile);
  c_annotate->add_option("--guidebook", annotate.guidebook, "Guidebook JSON replacing the built-in one")
      ->check(CLI::ExistingFile);
  c_annotate->add_option("--llm-endpoint", annotate.llm_endpoint,
                         "Base URL of an OpenAI-compatible API (else EPITRACE_LLM_ENDPOINT)");
  c_annotate->add_option("--llm-model", annotate.llm_model, "Model name (else EPITRACE_LLM_MODEL)");
  c_annotate->add_option("--llm-timeout", annotate.llm_timeout_s, "Request timeout in seconds")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_annotate->add_option("--batch-size", annotate.options.batch_size, "Sentences per annotator call")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_annotate->add_option("--retries", annotate.options.retries, "Retries per batch on unparsable replies")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  c_annotate->add_option("--context", annotate.options.context_limit,
                         "Labeled sentences shown as previous context (0 = all)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  c_annotate->add_option("-j,--jobs", annotate.jobs, "Traces annotated in parallel")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_annotate->add_option("--cache-dir", annotate.cache_dir, "Response cache (default: OUT_DIR/cache)");
  bool no_cache = false;
  c_annotate->add_flag("--no-cache", no_cache, "Bypass the response cache");
  c_annotate->add_flag("--skip-failed", annotate.skip_failed,
                       "Drop traces that fail annotation instead of failing the run");

  EvaluateConfig evaluate;
  auto* c_evaluate = app.add_subcommand("evaluate", "Agreement of predicted labels with a gold set");
  add_input_options(c_evaluate, evaluate.input_options);
  c_evaluate->add_option("predicted", evaluate.predicted, "Annotated corpora, one run each")
      ->required()->check(CLI::ExistingFile);
  c_evaluate->add_option("-g,--gold", evaluate.gold, "Gold corpus")->required()->check(CLI::ExistingFile);
  c_evaluate->add_option("-o,--out-dir", evaluate.out_dir, "Output directory")->capture_default_str();

  AnalyzeConfig analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Allocation, temporal and lexical profiles");
  add_input_options(c_analyze, analyze.input_options);
  c_analyze->add_option("inputs", analyze.inputs, "Annotated corpora")->required()->check(CLI::ExistingFile);
  c_analyze->add_option("-o,--out-dir", analyze.out_dir, "Output directory")->capture_default_str();
  c_analyze->add_option("--bins", analyze.bins, "Temporal bins per trace")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_analyze->add_option("--top-k", analyze.top_k, "Words kept per episode")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_segment(c_analyze, "--segment", analyze.segment, "Restrict to think or answer sentences");
  c_analyze->add_option("--stopwords", analyze.stopwords, "Stopword list replacing the built-in one")
      ->check(CLI::ExistingFile);

  CompareConfig compare;
  auto* c_compare = app.add_subcommand("compare", "Discriminative episode n-grams between two corpora");
  add_input_options(c_compare, compare.input_options);
  c_compare->add_option("corpus_a", compare.corpus_a, "Group A corpus")->required()->check(CLI::ExistingFile);
  c_compare->add_option("corpus_b", compare.corpus_b, "Group B corpus")->required()->check(CLI::ExistingFile);
  c_compare->add_option("--label-a", compare.label_a, "Group A name (default: file stem)");
  c_compare->add_option("--label-b", compare.label_b, "Group B name (default: file stem)");
  add_segment(c_compare, "--segment-a", compare.segment_a, "Segment used from group A");
  add_segment(c_compare, "--segment-b", compare.segment_b, "Segment used from group B");
  c_compare->add_option("-n,--ngram", compare.ngram_sizes, "N-gram sizes")
      ->delimiter(',')->check(CLI::PositiveNumber)->default_str("2,3");
  c_compare->add_option("--top-k", compare.top_k, "Patterns kept")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_compare->add_option("-o,--out-dir", compare.out_dir, "Output directory")->capture_default_str();

  DiagnoseConfig diagnose;
  auto* c_diagnose = app.add_subcommand("diagnose", "Lasso logistic regression of correctness on episode features");
  add_input_options(c_diagnose, diagnose.input_options);
  c_diagnose->add_option("inputs", diagnose.inputs, "Annotated corpora with correctness labels")
      ->required()->check(CLI::ExistingFile);
  c_diagnose->add_option("-o,--out-dir", diagnose.out_dir, "Output directory")->capture_default_str();
  c_diagnose->add_option("-C,--C", diagnose.lasso.C, "Inverse regularization strength")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_diagnose->add_option("--max-iter", diagnose.lasso.max_iter, "Iteration cap")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_diagnose->add_option("--tol", diagnose.lasso.tol, "Relative objective change to stop at")
      ->check(CLI::PositiveNumber)->capture_default_str();

  StratifyConfig stratify;
  auto* c_stratify = app.add_subcommand("stratify", "Sample traces stratified by model and correctness");
  add_input_options(c_stratify, stratify.input_options);
  c_stratify->add_option("input", stratify.input, "Corpus")->required()->check(CLI::ExistingFile);
  c_stratify->add_option("-n,--size", stratify.sample_size, "Traces to keep")
      ->check(CLI::PositiveNumber)->capture_default_str();
  c_stratify->add_option("--seed", stratify.seed, "Shuffle seed")->capture_default_str();
  c_stratify->add_option("-o,--out-dir", stratify.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  annotate.use_cache = !no_cache;

  try {
    if (c_annotate->parsed()) {
      cmd_annotate(annotate, out);
    } else if (c_evaluate->parsed()) {
      cmd_evaluate(evaluate, out);
    } else if (c_analyze->parsed()) {
      cmd_analyze(analyze, out);
    } else if (c_compare->parsed()) {
      cmd_compare(compare, out);
    } else if (c_diagnose->parsed()) {
      cmd_diagnose(diagnose, out);
    } else if (c_stratify->parsed()) {
      cmd_stratify(stratify, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace epitrace::cli
