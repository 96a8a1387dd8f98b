#include "epitrace/corpus/corpus_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "epitrace/file_util.hpp"
#include "json.hpp"

namespace epitrace {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class FieldReader {
 public:
  FieldReader(const json& obj, std::size_t line_no, std::string prefix = {})
      : obj_(obj), line_no_(line_no), prefix_(std::move(prefix)) {}

  [[noreturn]] void fail(std::string_view field, std::string_view what) const {
    throw CorpusError(fmt::format("line {}: {} field {}{}", line_no_, what, prefix_, field));
  }

  const json* find(std::string_view field) const {
    auto it = obj_.find(field);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string required_string(std::string_view field) const {
    const json* v = find(field);
    if (v == nullptr) fail(field, "missing");
    if (!v->is_string()) fail(field, "non-string");
    return v->get<std::string>();
  }

  std::optional<std::string> optional_string(std::string_view field) const {
    const json* v = find(field);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) fail(field, "non-string");
    return v->get<std::string>();
  }

  std::optional<std::uint64_t> optional_count(std::string_view field) const {
    const json* v = find(field);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      fail(field, "non-negative integer expected for");
    }
    return v->get<std::uint64_t>();
  }

  std::optional<bool> optional_bool(std::string_view field) const {
    const json* v = find(field);
    if (v == nullptr) return std::nullopt;
    if (!v->is_boolean()) fail(field, "boolean expected for");
    return v->get<bool>();
  }

  std::optional<Episode> optional_episode(std::string_view field) const {
    auto name = optional_string(field);
    if (!name) return std::nullopt;
    auto e = parse_episode(*name);
    if (!e) fail(field, fmt::format("unknown episode '{}' in", *name));
    return e;
  }

 private:
  const json& obj_;
  std::size_t line_no_;
  std::string prefix_;
};

void append_segment(Trace& trace, std::string_view text, Segment segment,
                    const TokenCounter& counter) {
  for (auto& sentence : segment_sentences(text)) {
    SentenceRecord rec;
    rec.index = trace.sentences.size();
    rec.token_count = counter(sentence);
    rec.text = std::move(sentence);
    rec.segment = segment;
    trace.sentences.push_back(std::move(rec));
  }
}

void parse_sentences(const json& arr, std::size_t line_no, const LoadOptions& options,
                     Trace& trace) {
  if (!arr.is_array()) {
    throw CorpusError(fmt::format("line {}: field sentences must be an array", line_no));
  }
  trace.sentences.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& item = arr[i];
    const std::string prefix = fmt::format("sentences[{}].", i);
    if (!item.is_object()) {
      throw CorpusError(fmt::format("line {}: {} is not an object", line_no,
                                    prefix.substr(0, prefix.size() - 1)));
    }
    FieldReader f(item, line_no, prefix);
    SentenceRecord rec;
    auto index = f.optional_count("index");
    if (!index) f.fail("index", "missing");
    rec.index = static_cast<std::size_t>(*index);
    rec.text = f.required_string("text");
    const std::string seg = f.required_string("segment");
    auto segment = parse_segment(seg);
    if (!segment) f.fail("segment", fmt::format("unknown value '{}' in", seg));
    rec.segment = *segment;
    rec.token_count = f.optional_count("token_count").value_or(options.counter(rec.text));
    rec.episode = f.optional_episode("episode");
    rec.rationale = f.optional_string("rationale");
    rec.gold_episode = f.optional_episode("gold_episode");
    trace.sentences.push_back(std::move(rec));
  }
}

}  // namespace

Trace parse_trace_line(std::string_view line, std::size_t line_no, const LoadOptions& options,
                       std::vector<std::string>* warnings) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError(fmt::format("line {}: invalid JSON ({})", line_no, e.what()));
  }
  if (!obj.is_object()) throw CorpusError(fmt::format("line {}: record is not an object", line_no));

  FieldReader f(obj, line_no);
  Trace trace;
  trace.trace_id = f.required_string("trace_id");
  trace.model_id = f.required_string("model_id");
  const std::string cls = f.required_string("model_class");
  auto model_class = parse_model_class(cls);
  if (!model_class) f.fail("model_class", fmt::format("unknown value '{}' in", cls));
  trace.model_class = *model_class;
  trace.problem_id = f.required_string("problem_id");
  trace.question = f.optional_string("question");
  trace.correctness = f.optional_bool("correctness");

  if (const json* sentences = f.find("sentences")) {
    parse_sentences(*sentences, line_no, options, trace);
  } else {
    auto think = f.optional_string("think_text");
    auto answer = f.optional_string("answer_text");
    auto response = f.optional_string("response");
    if (!think && !answer && !response) {
      throw CorpusError(fmt::format(
          "line {}: missing field sentences (or raw think_text/answer_text/response)", line_no));
    }
    if (response) {
      ThinkDelimiters delims = options.delimiters;
      if (const json* d = f.find("think_delimiters")) {
        if (!d->is_array() || d->size() != 2 || !(*d)[0].is_string() || !(*d)[1].is_string()) {
          f.fail("think_delimiters", "two-string array expected for");
        }
        delims.open = (*d)[0].get<std::string>();
        delims.close = (*d)[1].get<std::string>();
      }
      auto split = split_think_answer(*response, delims);
      if (split.warning && warnings != nullptr) {
        warnings->push_back(fmt::format("line {}: trace {}: {}", line_no, trace.trace_id,
                                        *split.warning));
      }
      think = think.value_or("") + split.think;
      answer = answer.value_or("") + split.answer;
    }
    if (think) append_segment(trace, *think, Segment::Think, options.counter);
    if (answer) append_segment(trace, *answer, Segment::Answer, options.counter);
  }

  try {
    validate_trace(trace);
  } catch (const InputError& e) {
    throw CorpusError(fmt::format("line {}: {}", line_no, e.what()));
  }
  return trace;
}

Corpus read_corpus(std::istream& in, const LoadOptions& options, std::string source_label) {
  Corpus corpus;
  corpus.source_label = std::move(source_label);
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Trace trace = parse_trace_line(line, line_no, options, &corpus.warnings);
    if (!ids.insert(trace.trace_id).second) {
      throw CorpusError(
          fmt::format("line {}: duplicate trace_id {}", line_no, trace.trace_id));
    }
    corpus.traces.push_back(std::move(trace));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw CorpusError(fmt::format("cannot open corpus file {}", path.string()));
  try {
    return read_corpus(in, options, path.stem().string());
  } catch (const CorpusError& e) {
    throw CorpusError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string serialize_trace(const Trace& trace) {
  ordered_json obj;
  obj["trace_id"] = trace.trace_id;
  obj["model_id"] = trace.model_id;
  obj["model_class"] = model_class_name(trace.model_class);
  obj["problem_id"] = trace.problem_id;
  if (trace.question) obj["question"] = *trace.question;
  if (trace.correctness) obj["correctness"] = *trace.correctness;
  ordered_json sentences = ordered_json::array();
  for (const auto& s : trace.sentences) {
    ordered_json rec;
    rec["index"] = s.index;
    rec["segment"] = segment_name(s.segment);
    rec["token_count"] = s.token_count;
    rec["text"] = s.text;
    if (s.episode) rec["episode"] = episode_name(*s.episode);
    if (s.rationale) rec["rationale"] = *s.rationale;
    if (s.gold_episode) rec["gold_episode"] = episode_name(*s.gold_episode);
    sentences.push_back(std::move(rec));
  }
  obj["sentences"] = std::move(sentences);
  return obj.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& t : corpus.traces) out << serialize_trace(t) << '\n';
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ostringstream ss;
  write_corpus(corpus, ss);
  write_file_atomic(path, ss.str());
}

}  // namespace epitrace
