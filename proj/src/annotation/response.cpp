#include "epitrace/annotation/response.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"

namespace epitrace {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string describe_mismatch(const std::vector<std::size_t>& missing,
                              const std::vector<std::size_t>& extra,
                              const std::vector<std::size_t>& duplicate) {
  std::string msg = "annotation indices do not match the batch:";
  if (!missing.empty()) msg += fmt::format(" missing [{}]", fmt::join(missing, ", "));
  if (!extra.empty()) msg += fmt::format(" extra [{}]", fmt::join(extra, ", "));
  if (!duplicate.empty()) msg += fmt::format(" duplicate [{}]", fmt::join(duplicate, ", "));
  return msg;
}

std::string describe_labels(const std::vector<std::string>& labels) {
  std::string msg = "unknown episode label";
  msg += labels.size() == 1 ? ": " : "s: ";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) msg += ", ";
    msg += fmt::format("\"{}\"", labels[i]);
  }
  return msg;
}

/// Rewrites a Python-literal style payload ('...' strings) into JSON.
/// Only quoting is touched.
std::optional<std::string> python_literal_to_json(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"') {
      const std::size_t start = i++;
      while (i < s.size() && s[i] != '"') i += (s[i] == '\\') ? 2 : 1;
      if (i >= s.size()) return std::nullopt;
      out.append(s.substr(start, i - start + 1));
      ++i;
    } else if (c == '\'') {
      out += '"';
      ++i;
      bool closed = false;
      while (i < s.size()) {
        const char d = s[i];
        if (d == '\\' && i + 1 < s.size()) {
          if (s[i + 1] == '\'') {
            out += '\'';
          } else {
            out += d;
            out += s[i + 1];
          }
          i += 2;
          continue;
        }
        if (d == '\'') {
          // A quote followed by a letter is an apostrophe inside the string.
          if (i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
            out += '\'';
            ++i;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        if (d == '"') {
          out += "\\\"";
        } else {
          out += d;
        }
        ++i;
      }
      if (!closed) return std::nullopt;
      out += '"';
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

json parse_payload(std::string_view text) {
  std::size_t open = text.find('{');
  std::size_t close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    open = text.find('[');
    close = text.rfind(']');
  }
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw MalformedResponse("annotator response contains no JSON payload");
  }
  const std::string_view body = text.substr(open, close - open + 1);
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    if (auto converted = python_literal_to_json(body)) {
      try {
        return json::parse(*converted);
      } catch (const json::parse_error&) {
      }
    }
    throw MalformedResponse(fmt::format("annotator response is not valid JSON: {}", e.what()));
  }
}

std::size_t parse_index(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::size_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d == static_cast<double>(static_cast<std::size_t>(d))) {
      return static_cast<std::size_t>(d);
    }
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::erase_if(s, [](char c) { return c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c)); });
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return static_cast<std::size_t>(std::stoull(s));
    }
  }
  throw MalformedResponse(fmt::format("annotation index is not a non-negative integer: {}", v.dump()));
}

}  // namespace

IndexMismatch::IndexMismatch(std::vector<std::size_t> missing, std::vector<std::size_t> extra,
                             std::vector<std::size_t> duplicate)
    : AnnotationResponseError(describe_mismatch(missing, extra, duplicate)),
      missing_(std::move(missing)),
      extra_(std::move(extra)),
      duplicate_(std::move(duplicate)) {}

UnknownLabel::UnknownLabel(std::vector<std::string> labels)
    : AnnotationResponseError(describe_labels(labels)), labels_(std::move(labels)) {}

std::vector<AnnotationResult> parse_annotation_response(std::string_view text,
                                                        std::span<const std::size_t> expected) {
  const json doc = parse_payload(text);
  const json* items = nullptr;
  if (doc.is_object()) {
    auto it = doc.find("sentences");
    if (it == doc.end() || !it->is_array()) {
      throw MalformedResponse("annotator response has no 'sentences' array");
    }
    items = &*it;
  } else if (doc.is_array()) {
    items = &doc;
  } else {
    throw MalformedResponse("annotator response is neither an object nor an array");
  }

  struct Raw {
    std::size_t index;
    std::string reason;
    std::string category;
  };
  std::vector<Raw> raw;
  raw.reserve(items->size());
  for (const auto& item : *items) {
    if (!item.is_object()) throw MalformedResponse("annotation entry is not an object");
    auto idx = item.find("index");
    auto cat = item.find("category");
    if (idx == item.end()) throw MalformedResponse("annotation entry lacks 'index'");
    if (cat == item.end() || !cat->is_string()) {
      throw MalformedResponse("annotation entry lacks a string 'category'");
    }
    std::string reason;
    for (const char* key : {"reason", "rationale"}) {
      auto r = item.find(key);
      if (r != item.end() && r->is_string()) {
        reason = r->get<std::string>();
        break;
      }
    }
    raw.push_back({parse_index(*idx), std::move(reason), cat->get<std::string>()});
  }

  const std::set<std::size_t> wanted(expected.begin(), expected.end());
  std::map<std::size_t, int> seen;
  for (const auto& r : raw) ++seen[r.index];
  std::vector<std::size_t> missing, extra, duplicate;
  for (std::size_t w : wanted) {
    if (!seen.contains(w)) missing.push_back(w);
  }
  for (const auto& [index, count] : seen) {
    if (!wanted.contains(index)) extra.push_back(index);
    if (count > 1) duplicate.push_back(index);
  }
  if (!missing.empty() || !extra.empty() || !duplicate.empty()) {
    throw IndexMismatch(std::move(missing), std::move(extra), std::move(duplicate));
  }

  std::vector<AnnotationResult> out;
  std::vector<std::string> unknown;
  out.reserve(raw.size());
  for (auto& r : raw) {
    auto e = parse_episode(r.category);
    if (!e) {
      unknown.push_back(r.category);
      continue;
    }
    out.push_back({r.index, std::move(r.reason), *e});
  }
  if (!unknown.empty()) throw UnknownLabel(std::move(unknown));

  std::sort(out.begin(), out.end(),
            [](const AnnotationResult& a, const AnnotationResult& b) { return a.index < b.index; });
  return out;
}

std::string serialize_annotation_response(std::span<const AnnotationResult> results) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    ordered_json item;
    item["index"] = r.index;
    item["reason"] = r.rationale;
    item["category"] = episode_name(r.episode);
    arr.push_back(std::move(item));
  }
  ordered_json doc;
  doc["sentences"] = std::move(arr);
  return doc.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

}  // namespace epitrace
