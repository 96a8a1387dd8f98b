#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "epitrace/analytics/sequence.hpp"
#include "epitrace/corpus/corpus_io.hpp"
#include "epitrace/diagnostics/model_io.hpp"
#include "test_support.hpp"

namespace epitrace {
namespace {

namespace fs = std::filesystem;
using testing::make_trace;
using testing::run_cli;
using testing::slurp;
using testing::TempDir;

void write(const fs::path& p, const Corpus& c) { save_corpus(c, p); }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(std::move(row));
  }
  return rows;
}

Corpus corpus_of(std::initializer_list<Trace> traces) {
  Corpus c;
  c.traces.assign(traces);
  return c;
}

std::string cell(const std::vector<std::vector<std::string>>& rows, std::size_t r, std::string_view column) {
  const auto& header = rows.at(0);
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw std::runtime_error("no column " + std::string(column));
  return rows.at(r).at(static_cast<std::size_t>(it - header.begin()));
}

// ---- evaluate ----

TEST(CliEvaluate, PerfectAndHalfAgreement) {
  TempDir d;
  const Corpus gold = corpus_of({make_trace("t", "N N V V")});
  write(d / "gold.jsonl", gold);
  write(d / "same.jsonl", gold);
  write(d / "half.jsonl", corpus_of({make_trace("t", "N V N V")}));
  const auto r = run_cli({"evaluate", (d / "same.jsonl").string(), (d / "half.jsonl").string(), "-g",
                          (d / "gold.jsonl").string(), "-o", (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(d / "out" / "agreement.csv");
  bool saw_same = false, saw_half = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (cell(rows, i, "group") != "overall") continue;
    if (cell(rows, i, "run") == "same") {
      EXPECT_EQ(cell(rows, i, "accuracy"), "100.00");
      EXPECT_EQ(cell(rows, i, "kappa"), "100.00");
      saw_same = true;
    } else if (cell(rows, i, "run") == "half") {
      EXPECT_EQ(cell(rows, i, "accuracy"), "50.00");
      EXPECT_EQ(cell(rows, i, "kappa"), "0.00");
      saw_half = true;
    }
  }
  EXPECT_TRUE(saw_same && saw_half) << slurp(d / "out" / "agreement.csv");
}

TEST(CliEvaluate, MissingTraceIsInputError) {
  TempDir d;
  write(d / "gold.jsonl", corpus_of({make_trace("t", "N"), make_trace("u", "N")}));
  write(d / "pred.jsonl", corpus_of({make_trace("t", "N"), make_trace("x", "N")}));
  const auto r = run_cli({"evaluate", (d / "pred.jsonl").string(), "-g", (d / "gold.jsonl").string(), "-o",
                          (d / "out").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("trace u"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(d / "out" / "agreement.csv"));
}

// ---- analyze ----

TEST(CliAnalyze, OutputsAreConsistent) {
  TempDir d;
  std::mt19937_64 rng(31);
  Corpus c;
  for (int i = 0; i < 6; ++i) {
    Trace t = testing::random_trace(rng, "t" + std::to_string(i), 5, 30);
    t.model_id = i % 2 ? "odd" : "even";
    c.traces.push_back(std::move(t));
  }
  write(d / "c.jsonl", c);
  const auto r = run_cli({"analyze", (d / "c.jsonl").string(), "-o", (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;

  const auto alloc = read_csv(d / "out" / "allocation.csv");
  ASSERT_EQ(alloc.size(), 3u);
  for (std::size_t i = 1; i < alloc.size(); ++i) {
    double s = 0.0;
    for (const char* col : {"pct_read", "pct_analyze", "pct_plan", "pct_implement", "pct_explore", "pct_verify",
                            "pct_monitor", "pct_answer"}) {
      s += std::stod(cell(alloc, i, col));
    }
    // Eight values rounded to two decimals.
    EXPECT_NEAR(s, 100.0, 0.05);
  }

  const auto temporal = read_csv(d / "out" / "temporal.csv");
  std::set<int> bins;
  for (std::size_t i = 1; i < temporal.size(); ++i) bins.insert(std::stoi(cell(temporal, i, "bin")));
  EXPECT_EQ(*bins.begin(), 0);
  EXPECT_EQ(*bins.rbegin(), 24);
  EXPECT_EQ(bins.size(), 25u);
  EXPECT_TRUE(fs::exists(d / "out" / "lexical.csv"));
}

TEST(CliAnalyze, ThinkSegmentFilter) {
  TempDir d;
  write(d / "c.jsonl", corpus_of({make_trace("t", "R I A", {1, 1, 2}, 2)}));
  const auto r = run_cli({"analyze", (d / "c.jsonl").string(), "--segment", "think", "-o", (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto alloc = read_csv(d / "out" / "allocation.csv");
  EXPECT_EQ(cell(alloc, 1, "pct_answer"), "0.00");
  EXPECT_EQ(cell(alloc, 1, "pct_read"), "50.00");
}

TEST(CliAnalyze, BadArgumentsExitTwo) {
  TempDir d;
  write(d / "c.jsonl", corpus_of({make_trace("t", "R")}));
  EXPECT_EQ(run_cli({"analyze", (d / "c.jsonl").string(), "--bins", "0", "-o", (d / "o").string()}).code, 2);
  EXPECT_EQ(run_cli({"analyze", (d / "missing.jsonl").string()}).code, 2);
  EXPECT_EQ(run_cli({"analyze", (d / "c.jsonl").string(), "--segment", "sideways"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
}

TEST(CliAnalyze, ConfigFileAndFlagPrecedence) {
  TempDir d;
  write(d / "c.jsonl", corpus_of({make_trace("t", "R I A", {4, 4, 4})}));
  testing::spit(d / "cfg.toml", "[analyze]\nbins = 5\n");
  auto max_bin = [&](const fs::path& out) {
    const auto rows = read_csv(out / "temporal.csv");
    int m = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) m = std::max(m, std::stoi(cell(rows, i, "bin")));
    return m;
  };
  auto r = run_cli({"--config", (d / "cfg.toml").string(), "analyze", (d / "c.jsonl").string(), "-o",
                    (d / "from_config").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(max_bin(d / "from_config"), 4);
  r = run_cli({"--config", (d / "cfg.toml").string(), "analyze", (d / "c.jsonl").string(), "--bins", "10", "-o",
               (d / "from_flag").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(max_bin(d / "from_flag"), 9);
  ASSERT_EQ(run_cli({"analyze", (d / "c.jsonl").string(), "-o", (d / "default").string()}).code, 0);
  EXPECT_EQ(max_bin(d / "default"), 24);
}

// ---- compare ----

TEST(CliCompare, PlantedPatternRanksFirst) {
  TempDir d;
  write(d / "a.jsonl", corpus_of({make_trace("a1", "R V M I A"), make_trace("a2", "R I V M N")}));
  write(d / "b.jsonl", corpus_of({make_trace("b1", "R I A"), make_trace("b2", "R I V A")}));
  const auto r = run_cli({"compare", (d / "a.jsonl").string(), (d / "b.jsonl").string(), "-n", "2", "-o",
                          (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(d / "out" / "mi_ranking.csv");
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(cell(rows, 1, "pattern"), "V-M");
  EXPECT_EQ(cell(rows, 1, "score"), "1.0000");
  EXPECT_EQ(cell(rows, 1, "attribution"), "a");
  EXPECT_EQ(cell(rows, 1, "p_given_present"), "1.0000");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(cell(rows, i, "rank"), std::to_string(i));
  EXPECT_TRUE(fs::exists(d / "out" / "allocation_delta.csv"));
}

TEST(CliCompare, IdenticalCorporaScoreZero) {
  TempDir d;
  const Corpus c = corpus_of({make_trace("a1", "R V M A"), make_trace("a2", "R I N A")});
  write(d / "a.jsonl", c);
  write(d / "b.jsonl", c);
  ASSERT_EQ(run_cli({"compare", (d / "a.jsonl").string(), (d / "b.jsonl").string(), "-o", (d / "out").string()}).code,
            0);
  const auto rows = read_csv(d / "out" / "mi_ranking.csv");
  ASSERT_GT(rows.size(), 1u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(cell(rows, i, "score"), "0.0000");
}

TEST(CliCompare, SameLabelIsRejected) {
  TempDir d;
  write(d / "a.jsonl", corpus_of({make_trace("a1", "R V")}));
  write(d / "b.jsonl", corpus_of({make_trace("b1", "R I")}));
  const auto r = run_cli({"compare", (d / "a.jsonl").string(), (d / "b.jsonl").string(), "--label-a", "x",
                          "--label-b", "x", "-o", (d / "out").string()});
  EXPECT_EQ(r.code, 2);
}

// ---- diagnose ----

TEST(CliDiagnose, HugeRegularizationGivesEmptyLists) {
  TempDir d;
  write(d / "c.jsonl", testing::planted_corpus(32, 40));
  const auto r = run_cli({"diagnose", (d / "c.jsonl").string(), "--C", "1e-9", "-o", (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_csv(d / "out" / "coefficients.csv").size(), 1u);
  const auto features = read_csv(d / "out" / "features.csv");
  EXPECT_EQ(features.size(), 41u);
  EXPECT_EQ(features[0].size(), 77u);
}

TEST(CliDiagnose, SingleClassFails) {
  TempDir d;
  Corpus c = testing::planted_corpus(33, 10);
  for (auto& t : c.traces) t.correctness = true;
  write(d / "c.jsonl", c);
  const auto r = run_cli({"diagnose", (d / "c.jsonl").string(), "-o", (d / "out").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("labels must contain both classes"), std::string::npos) << r.err;
}

TEST(CliDiagnose, SavedModelReloads) {
  TempDir d;
  write(d / "c.jsonl", testing::planted_corpus(34, 60));
  ASSERT_EQ(run_cli({"diagnose", (d / "c.jsonl").string(), "-o", (d / "out").string()}).code, 0);
  const auto m = load_diagnostic_model(d / "out" / "model.json");
  EXPECT_EQ(m.training_rows, 60u);
  EXPECT_EQ(m.model.weights.size(), 75u);
  EXPECT_DOUBLE_EQ(m.config.C, 0.5);
}

// ---- stratify ----

TEST(CliStratify, WritesSample) {
  TempDir d;
  write(d / "c.jsonl", testing::planted_corpus(35, 30));
  ASSERT_EQ(run_cli({"stratify", (d / "c.jsonl").string(), "-n", "10", "-o", (d / "out").string()}).code, 0);
  EXPECT_EQ(load_corpus(d / "out" / "stratified.jsonl").traces.size(), 10u);
}

// ---- annotate ----

Corpus raw_corpus() {
  Corpus c = corpus_of({make_trace("t1", "R N I"), make_trace("t2", "R V A")});
  for (auto& t : c.traces) {
    for (auto& s : t.sentences) s.episode.reset();
  }
  c.traces[0].sentences[1].text = "Let me double-check the sum.";
  return c;
}

TEST(CliAnnotate, WarmCacheMakesNoCalls) {
  TempDir d;
  write(d / "c.jsonl", raw_corpus());
  const std::vector<std::string> args{"annotate", (d / "c.jsonl").string(), "--annotator", "keyword",
                                      "-o", (d / "out").string()};
  const auto cold = run_cli(args);
  ASSERT_EQ(cold.code, 0) << cold.err;
  EXPECT_NE(cold.out.find("annotator calls: 2"), std::string::npos) << cold.out;
  const std::string first = slurp(d / "out" / "annotated.jsonl");
  const auto warm = run_cli(args);
  ASSERT_EQ(warm.code, 0) << warm.err;
  EXPECT_NE(warm.out.find("annotator calls: 0"), std::string::npos) << warm.out;
  EXPECT_NE(warm.out.find("cache hits: 2"), std::string::npos) << warm.out;
  EXPECT_EQ(slurp(d / "out" / "annotated.jsonl"), first);
  const Corpus labeled = load_corpus(d / "out" / "annotated.jsonl");
  EXPECT_EQ(labeled.traces[0].sentences[1].episode, Episode::Verify);
}

TEST(CliAnnotate, UnreachableLlmFailsWithoutOutput) {
  TempDir d;
  write(d / "c.jsonl", raw_corpus());
  const auto r = run_cli({"annotate", (d / "c.jsonl").string(), "--annotator", "llm", "--llm-endpoint",
                          "http://127.0.0.1:1/v1", "--llm-model", "m", "--no-cache", "-o", (d / "out").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(d / "out" / "annotated.jsonl"));
  EXPECT_NE(r.err.find("t1"), std::string::npos) << r.err;
}

TEST(CliAnnotate, SkipFailedKeepsGoodTraces) {
  TempDir d;
  write(d / "c.jsonl", raw_corpus());
  // Nothing listens on the endpoint, so every trace fails in transport.
  const std::vector<std::string> base{"annotate", (d / "c.jsonl").string(), "--annotator", "llm",
                                      "--llm-endpoint", "http://127.0.0.1:1/v1", "--llm-model", "m", "--no-cache"};
  auto strict_args = base;
  strict_args.insert(strict_args.end(), {"-o", (d / "strict").string()});
  EXPECT_NE(run_cli(strict_args).code, 0);
  EXPECT_FALSE(fs::exists(d / "strict" / "annotated.jsonl"));

  auto lenient_args = base;
  lenient_args.insert(lenient_args.end(), {"--skip-failed", "-o", (d / "lenient").string()});
  const auto r = run_cli(lenient_args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("failed: 2"), std::string::npos) << r.out;
  EXPECT_TRUE(load_corpus(d / "lenient" / "annotated.jsonl").traces.empty());
}

TEST(CliAnnotate, MockTableLabels) {
  TempDir d;
  write(d / "c.jsonl", raw_corpus());
  testing::spit(d / "table.json", R"({"t1": "R N I", "t2": ["Read", "Verify", "Answer"]})");
  const auto r = run_cli({"annotate", (d / "c.jsonl").string(), "--annotator", "mock", "--mock-table",
                          (d / "table.json").string(), "--no-cache", "-o", (d / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Corpus c = load_corpus(d / "out" / "annotated.jsonl");
  EXPECT_EQ(to_string(episode_sequence(c.traces[0])), "R N I");
  EXPECT_EQ(to_string(episode_sequence(c.traces[1])), "R V A");
  EXPECT_TRUE(fs::exists(d / "out" / "annotation_log.jsonl"));

  testing::spit(d / "bad.json", R"({"t1": ["Read", "Nonsense"]})");
  EXPECT_EQ(run_cli({"annotate", (d / "c.jsonl").string(), "--annotator", "mock", "--mock-table",
                     (d / "bad.json").string(), "-o", (d / "bad").string()})
                .code,
            2);
}

// ---- golden pipeline ----

TEST(Golden, PipelineReproducesExpectedOutputs) {
  TempDir d;
  const fs::path fx = testing::fixture_dir() / "golden";
  const std::string table = (fx / "mock_table.json").string();
  const std::string a = (d / "a" / "annotated.jsonl").string();
  const std::string b = (d / "b" / "annotated.jsonl").string();
  const std::vector<std::vector<std::string>> steps{
      {"annotate", (fx / "model_a.jsonl").string(), "-o", (d / "a").string(), "--annotator", "mock", "--mock-table",
       table, "--no-cache"},
      {"annotate", (fx / "model_b.jsonl").string(), "-o", (d / "b").string(), "--annotator", "mock", "--mock-table",
       table, "--no-cache"},
      {"analyze", a, b, "-o", (d / "analyze").string()},
      {"compare", a, b, "--label-a", "deepthink", "--label-b", "quickthink", "-o", (d / "compare").string()},
      {"diagnose", a, b, "--C", "5", "-o", (d / "diagnose").string()},
  };
  for (const auto& args : steps) {
    const auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << args[0] << ": " << r.err;
  }
  const std::vector<std::pair<std::string, fs::path>> outputs{
      {"annotated_a.jsonl", d / "a" / "annotated.jsonl"},
      {"annotated_b.jsonl", d / "b" / "annotated.jsonl"},
      {"allocation.csv", d / "analyze" / "allocation.csv"},
      {"temporal.csv", d / "analyze" / "temporal.csv"},
      {"lexical.csv", d / "analyze" / "lexical.csv"},
      {"mi_ranking.csv", d / "compare" / "mi_ranking.csv"},
      {"allocation_delta.csv", d / "compare" / "allocation_delta.csv"},
      {"coefficients.csv", d / "diagnose" / "coefficients.csv"},
      {"features.csv", d / "diagnose" / "features.csv"},
  };
  for (const auto& [name, produced] : outputs) {
    EXPECT_EQ(slurp(produced), slurp(fx / "expected" / name)) << name;
  }
}

}  // namespace
}  // namespace epitrace
