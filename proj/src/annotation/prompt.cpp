#include "epitrace/annotation/prompt.hpp"

#include <fmt/format.h>

#include "epitrace/error.hpp"

namespace epitrace {

namespace {

constexpr std::string_view kFraming =
    "You are annotating the reasoning process of a large language model that solved a math "
    "problem. Label each sentence of the model response with exactly one of eight episode "
    "categories: Read, Analyze, Plan, Implement, Explore, Verify, Monitor, and Answer.\n"
    "\n"
    "The [Guidebook] - [End of the Guidebook] section defines each category.\n"
    "The [Math Problem] - [End of the Math Problem] section gives the problem.\n"
    "The [Previous Context] - [End of the Previous Context] section lists the sentences of the "
    "response that are already annotated, with their labels.\n"
    "The [Input] - [End of the Input] section lists the sentences you must annotate.\n"
    "The [Format] - [End of the Format] section describes the output format.\n";

constexpr std::string_view kFormat =
    "Output JSON giving, for every indexed sentence, its index, a short rationale and its "
    "category:\n"
    "{\"sentences\": [\n"
    "  {\"index\": <index of the sentence>, \"reason\": \"<short reason for the label>\", "
    "\"category\": \"<one of the eight categories>\"},\n"
    "  ...\n"
    "]}\n";

}  // namespace

void validate_batch(const AnnotationBatch& batch) {
  if (batch.items.empty()) {
    throw InputError(fmt::format("trace {}: annotation batch has no items", batch.trace_id));
  }
  const std::size_t expected_first = batch.context_start + batch.previous_context.size();
  for (std::size_t i = 0; i < batch.items.size(); ++i) {
    if (batch.items[i].index != expected_first + i) {
      throw InputError(fmt::format(
          "trace {}: batch item {} has index {}, expected {}", batch.trace_id, i,
          batch.items[i].index, expected_first + i));
    }
  }
}

std::string assemble_prompt(const Guidebook& guidebook, const AnnotationBatch& batch) {
  validate_batch(batch);

  std::string out;
  out.reserve(16384);
  out += kFraming;
  out += "\n[Guidebook]\n";
  out += guidebook.render();
  out += "[End of the Guidebook]\n\n";

  out += "[Math Problem]\n";
  out += batch.question.empty() ? std::string("(not provided)") : batch.question;
  out += "\n[End of the Math Problem]\n\n";

  out += "[Previous Context]\nThe previous sentences are:\n";
  if (batch.previous_context.empty()) {
    out += kEmptyContextMarker;
    out += '\n';
  } else {
    for (const auto& s : batch.previous_context) {
      out += fmt::format("({}) {}\n", episode_name(s.episode), s.text);
    }
  }
  out += "[End of the Previous Context]\n\n";

  out += "[Input]\nThe following sentences need to be classified:\n";
  for (std::size_t i = 0; i < batch.items.size(); ++i) {
    out += fmt::format("[{}] {}\n", i + 1, batch.items[i].text);
  }
  out += "[End of the Input]\n\n";

  out += "[Format]\n";
  out += kFormat;
  out += "[End of the Format]\n\n";

  out += fmt::format(
      "Now annotate the sentences in the [Input] - [End of the Input] section, referring to the "
      "guidebook. Use exactly the index numbers given in the [Input] section. You should output "
      "the label for {} sentences.\n",
      batch.items.size());
  return out;
}

}  // namespace epitrace
