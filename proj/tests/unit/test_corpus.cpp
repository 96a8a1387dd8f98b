#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "epitrace/corpus/corpus_io.hpp"
#include "epitrace/corpus/episode.hpp"
#include "epitrace/corpus/segmenter.hpp"
#include "epitrace/corpus/token_counter.hpp"
#include "test_support.hpp"

namespace epitrace {
namespace {

using testing::TempDir;

TEST(Episode, CodesAreBijective) {
  std::string codes;
  for (Episode e : kAllEpisodes) {
    codes += episode_code(e);
    EXPECT_EQ(episode_from_code(episode_code(e)), e);
    EXPECT_EQ(parse_episode(episode_name(e)), e);
  }
  EXPECT_EQ(codes, "RNPIEVMA");
  EXPECT_EQ(episode_code(Episode::Analyze), 'N');
  EXPECT_EQ(episode_code(Episode::Answer), 'A');
}

TEST(Episode, ParseIsCaseInsensitiveAndTrims) {
  EXPECT_EQ(parse_episode("  verify "), Episode::Verify);
  EXPECT_EQ(parse_episode("EXPLORE"), Episode::Explore);
  EXPECT_FALSE(parse_episode("Explored"));
  EXPECT_FALSE(episode_from_code('X'));
}

TEST(Segmenter, SplitsOnTerminalPeriods) {
  EXPECT_EQ(segment_sentences("Let x = 2. Then 2x = 4."),
            (std::vector<std::string>{"Let x = 2.", "Then 2x = 4."}));
}

TEST(Segmenter, KeepsDecimals) {
  EXPECT_EQ(segment_sentences("So 3.14 is pi."), (std::vector<std::string>{"So 3.14 is pi."}));
}

TEST(Segmenter, EmptyInput) {
  EXPECT_TRUE(segment_sentences("").empty());
  EXPECT_TRUE(segment_sentences(" \n\n\t ").empty());
}

TEST(Segmenter, KeepsAbbreviations) {
  EXPECT_EQ(segment_sentences("Use a known bound, e.g. Cauchy. It works."),
            (std::vector<std::string>{"Use a known bound, e.g. Cauchy.", "It works."}));
  EXPECT_EQ(segment_sentences("See Fig. 3 for details. Done."),
            (std::vector<std::string>{"See Fig. 3 for details.", "Done."}));
}

TEST(Segmenter, KeepsInlineMath) {
  EXPECT_EQ(segment_sentences("We get $x = 1. Y$ here. Next step."),
            (std::vector<std::string>{"We get $x = 1. Y$ here.", "Next step."}));
  EXPECT_EQ(segment_sentences("Then \\(a. B\\) holds. Good."),
            (std::vector<std::string>{"Then \\(a. B\\) holds.", "Good."}));
}

TEST(Segmenter, BlankLinesSeparateDisplayMath) {
  EXPECT_EQ(segment_sentences("So we have\n\n$$x^2 = 4$$\n\nThus x is 2."),
            (std::vector<std::string>{"So we have", "$$x^2 = 4$$", "Thus x is 2."}));
}

TEST(Segmenter, QuestionAndExclamation) {
  EXPECT_EQ(segment_sentences("Is it 4? Yes! It is."),
            (std::vector<std::string>{"Is it 4?", "Yes!", "It is."}));
}

TEST(Segmenter, ClosingQuoteStaysWithSentence) {
  EXPECT_EQ(segment_sentences("He said \"done.\" Then left."),
            (std::vector<std::string>{"He said \"done.\"", "Then left."}));
}

TEST(Segmenter, NoSplitBeforeLowercase) {
  EXPECT_EQ(segment_sentences("The value is 5. so what."),
            (std::vector<std::string>{"The value is 5. so what."}));
}

TEST(Segmenter, PreservesNonWhitespaceOnRandomText) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab XY.?!$()[]{}\\\n3.e.g";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> len(0, 80);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (std::size_t n = len(rng); n > 0; --n) text += alphabet[pick(rng)];
    const auto parts = segment_sentences(text);
    std::string joined, original;
    for (const auto& p : parts) {
      ASSERT_FALSE(p.empty());
      joined += p;
      joined += ' ';
    }
    auto strip = [](std::string s) {
      s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
      return s;
    };
    ASSERT_EQ(strip(joined), strip(text)) << "input: " << text;
  }
}

TEST(ThinkSplit, BothDelimiters) {
  const auto s = split_think_answer("<think>plan</think>final");
  EXPECT_EQ(s.think, "plan");
  EXPECT_EQ(s.answer, "final");
  EXPECT_FALSE(s.warning);
}

TEST(ThinkSplit, NoDelimiters) {
  const auto s = split_think_answer("42.");
  EXPECT_EQ(s.think, "");
  EXPECT_EQ(s.answer, "42.");
  EXPECT_FALSE(s.warning);
}

TEST(ThinkSplit, OpenOnlyTakesRemainderAsThink) {
  const auto s = split_think_answer("<think>still going");
  EXPECT_EQ(s.think, "still going");
  EXPECT_EQ(s.answer, "");
  EXPECT_TRUE(s.warning);
}

TEST(ThinkSplit, CloseOnlyTakesPrefixAsThink) {
  const auto s = split_think_answer("reasoning</think>answer");
  EXPECT_EQ(s.think, "reasoning");
  EXPECT_EQ(s.answer, "answer");
  EXPECT_TRUE(s.warning);
}

TEST(ThinkSplit, CustomDelimiters) {
  const auto s = split_think_answer("[[a]] b", {"[[", "]]"});
  EXPECT_EQ(s.think, "a");
  EXPECT_EQ(s.answer, "b");
}

TEST(TokenCounter, Examples) {
  const auto c = default_token_counter();
  EXPECT_EQ(count_tokens("a b c", c), 3u);
  EXPECT_EQ(count_tokens("", c), 0u);
  EXPECT_EQ(count_tokens("x+1 = 2", c), 5u);
  EXPECT_EQ(count_tokens("a b c", whitespace_token_counter()), 3u);
  EXPECT_EQ(count_tokens("x+1 = 2", whitespace_token_counter()), 3u);
}

TEST(TokenCounter, ConcatenationBound) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "ab1 +.,'\xC3\xA9";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<std::size_t> len(0, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string a, b;
    for (std::size_t n = len(rng); n > 0; --n) a += alphabet[pick(rng)];
    for (std::size_t n = len(rng); n > 0; --n) b += alphabet[pick(rng)];
    const auto whole = count_default_tokens(a + " " + b);
    ASSERT_GE(whole + 1, count_default_tokens(a) + count_default_tokens(b)) << a << "|" << b;
  }
}

constexpr std::string_view kTwoLines =
    R"({"trace_id":"t1","model_id":"m","model_class":"reasoning","problem_id":"p","sentences":[{"index":0,"text":"Read it.","segment":"think","episode":"Read"},{"index":1,"text":"It is 4.","segment":"answer","token_count":3,"episode":"Answer"}],"correctness":true}
{"trace_id":"t2","model_id":"m","model_class":"non_reasoning","problem_id":"p","answer_text":"We get 4. The answer is 4."}
)";

TEST(CorpusIo, LoadsValidFile) {
  std::istringstream in{std::string(kTwoLines)};
  const Corpus c = read_corpus(in, {}, "x");
  ASSERT_EQ(c.traces.size(), 2u);
  EXPECT_EQ(c.traces[0].sentences[0].token_count, 3u);
  EXPECT_EQ(c.traces[0].sentences[1].token_count, 3u);
  EXPECT_EQ(c.traces[0].correctness, true);
  EXPECT_EQ(c.traces[1].sentences.size(), 2u);
  EXPECT_EQ(c.traces[1].sentences[1].segment, Segment::Answer);
  EXPECT_FALSE(c.traces[1].correctness);
  for (const auto& t : c.traces) {
    std::uint64_t sum = 0;
    for (const auto& s : t.sentences) sum += s.token_count;
    EXPECT_EQ(sum, t.total_tokens());
  }
}

TEST(CorpusIo, MissingFieldNamesLine) {
  std::istringstream in(R"({"trace_id":"t1","model_class":"reasoning","problem_id":"p","answer_text":"x"})");
  try {
    read_corpus(in, {}, "x");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_STREQ(e.what(), "line 1: missing field model_id");
  }
}

TEST(CorpusIo, DuplicateTraceId) {
  std::istringstream in(
      "{\"trace_id\":\"t1\",\"model_id\":\"m\",\"model_class\":\"reasoning\",\"problem_id\":\"p\",\"answer_text\":\"x\"}\n"
      "{\"trace_id\":\"t1\",\"model_id\":\"m\",\"model_class\":\"reasoning\",\"problem_id\":\"p\",\"answer_text\":\"y\"}\n");
  try {
    read_corpus(in, {}, "x");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("t1"), std::string::npos);
  }
}

TEST(CorpusIo, RejectsBadModelClassAndEpisode) {
  std::istringstream a(R"({"trace_id":"t","model_id":"m","model_class":"huge","problem_id":"p","answer_text":"x"})");
  EXPECT_THROW(read_corpus(a, {}, "x"), CorpusError);
  std::istringstream b(
      R"({"trace_id":"t","model_id":"m","model_class":"reasoning","problem_id":"p","sentences":[{"index":0,"text":"a","segment":"think","episode":"Explored"}]})");
  EXPECT_THROW(read_corpus(b, {}, "x"), CorpusError);
}

TEST(CorpusIo, RejectsAnswerBeforeThink) {
  std::istringstream in(
      R"({"trace_id":"t","model_id":"m","model_class":"reasoning","problem_id":"p","sentences":[{"index":0,"text":"a","segment":"answer"},{"index":1,"text":"b","segment":"think"}]})");
  EXPECT_THROW(read_corpus(in, {}, "x"), InputError);
}

TEST(CorpusIo, ResponseWithOpenOnlyWarns) {
  std::istringstream in(
      R"({"trace_id":"t","model_id":"m","model_class":"reasoning","problem_id":"p","response":"<think>Still. Going."})");
  const Corpus c = read_corpus(in, {}, "x");
  ASSERT_EQ(c.traces[0].sentences.size(), 2u);
  EXPECT_EQ(c.traces[0].sentences[1].segment, Segment::Think);
  EXPECT_EQ(c.warnings.size(), 1u);
}

TEST(CorpusIo, PerRecordDelimiters) {
  std::istringstream in(
      R"({"trace_id":"t","model_id":"m","model_class":"reasoning","problem_id":"p","think_delimiters":["<r>","</r>"],"response":"<r>Plan it.</r>Done."})");
  const Corpus c = read_corpus(in, {}, "x");
  ASSERT_EQ(c.traces[0].sentences.size(), 2u);
  EXPECT_EQ(c.traces[0].sentences[0].segment, Segment::Think);
  EXPECT_EQ(c.traces[0].sentences[1].text, "Done.");
}

TEST(CorpusIo, RoundTripIsStable) {
  TempDir dir;
  testing::spit(dir / "in.jsonl", kTwoLines);
  const Corpus a = load_corpus(dir / "in.jsonl");
  EXPECT_EQ(a.source_label, "in");
  save_corpus(a, dir / "out.jsonl");
  const Corpus b = load_corpus(dir / "out.jsonl");
  save_corpus(b, dir / "out2.jsonl");
  EXPECT_EQ(testing::slurp(dir / "out.jsonl"), testing::slurp(dir / "out2.jsonl"));
  ASSERT_EQ(b.traces.size(), 2u);
  EXPECT_EQ(b.traces[0].sentences[0].episode, Episode::Read);
  EXPECT_EQ(b.traces[1].sentences.size(), a.traces[1].sentences.size());
}

TEST(CorpusIo, MissingFileIsInputError) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl"), InputError);
}

TEST(Trace, ValidateRejectsGaps) {
  Trace t = testing::make_trace("t", "R N I");
  t.sentences[2].index = 5;
  EXPECT_THROW(validate_trace(t), InputError);
}

TEST(Trace, ValidateRejectsZeroTokensOnText) {
  Trace t = testing::make_trace("t", "R");
  t.sentences[0].token_count = 0;
  EXPECT_THROW(validate_trace(t), InputError);
}

TEST(Trace, TokensBySegment) {
  const Trace t = testing::make_trace("t", "R N A", {900, 0, 100}, 2);
  EXPECT_EQ(t.total_tokens(), 1000u);
  EXPECT_EQ(t.tokens_in(SegmentFilter::Think), 900u);
  EXPECT_EQ(t.tokens_in(SegmentFilter::Answer), 100u);
}

}  // namespace
}  // namespace epitrace
