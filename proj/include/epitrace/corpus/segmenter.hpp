/**
 * @file segmenter.hpp
 * @brief Rule-based sentence segmentation and think/answer splitting.
 *
 * Segmentation rules:
 *  - Blank lines always end a sentence, so a display-math block set off by
 *    blank lines comes out as its own sentence.
 *  - Inside a paragraph, a run of '.', '!' or '?' (optionally followed by
 *    closing quotes) ends a sentence when it is followed by whitespace and
 *    then an upper-case letter or a digit.
 *  - No split happens inside a protected span: matched $...$, $$...$$,
 *    \(...\), \[...\] and matched (), [], {} pairs.
 *  - No split after a known abbreviation ("e.g.", "i.e.", "cf.", ...).
 *
 * Decimals are never split because a boundary needs whitespace after the
 * terminator.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epitrace {

std::vector<std::string> segment_sentences(std::string_view text);

struct ThinkDelimiters {
  std::string open = "<think>";
  std::string close = "</think>";
};

struct ThinkAnswerSplit {
  std::string think;
  std::string answer;
  /// Set when the delimiters were unbalanced.
  std::optional<std::string> warning;
};

/// Splits a raw response into its thinking span and the answer remainder.
///
///  - open and close present: think is the enclosed span, answer is the
///    text outside it.
///  - neither present: think is empty, answer is the whole text.
///  - open without close: everything after open is think (truncated
///    generation); a warning is attached.
///  - close without open: everything before close is think (the open marker
///    was part of the chat template); a warning is attached.
///
/// Both parts are trimmed of surrounding whitespace.
ThinkAnswerSplit split_think_answer(std::string_view raw, const ThinkDelimiters& delimiters = {});

}  // namespace epitrace
