/*
 * Copyright 2026 The Novelty Workbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "novelty/claim_text.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <regex>

#include "novelty/errors.h"
#include "novelty/textsim.h"
#include "novelty/utf8.h"

namespace novelty {
namespace {

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
         c == 0xA0;
}

bool is_ascii_alnum(unsigned char c) { return std::isalnum(c) != 0; }

// Byte offset -> index of the scalar starting at or after that byte.
std::vector<std::size_t> scalar_offsets(std::string_view text) {
  std::vector<std::size_t> out(text.size() + 1, 0);
  std::size_t scalar = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    out[i] = scalar;
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++scalar;
  }
  out[text.size()] = scalar;
  return out;
}

}  // namespace

NumeralStripResult strip_reference_numerals(std::string_view claim_text) {
  static const std::regex kGroup(
      R"(\(\s*\d+[A-Za-z]{0,2}\s*(?:[,;]\s*\d+[A-Za-z]{0,2}\s*)*\))");
  const std::string text(claim_text);

  std::vector<std::pair<std::size_t, std::size_t>> byte_ranges;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kGroup);
       it != std::sregex_iterator(); ++it) {
    std::size_t start = static_cast<std::size_t>(it->position());
    std::size_t end = start + static_cast<std::size_t>(it->length());
    // "f(10)" is a call, not a label.
    if (start > 0 && is_ascii_alnum(static_cast<unsigned char>(text[start - 1]))) continue;

    const char prev = start > 0 ? text[start - 1] : '\0';
    const char next = end < text.size() ? text[end] : '\0';
    const bool next_is_gap = next == '\0' || next == ' ' || next == '\t' || next == '\n' ||
                             std::string_view(",;:.)]").find(next) != std::string_view::npos;
    if (prev == ' ' && next_is_gap) {
      --start;
    } else if ((prev == '\0' || prev == '(' || prev == '\n') && next == ' ') {
      ++end;
    }
    byte_ranges.emplace_back(start, end);
  }

  const std::vector<std::size_t> to_scalar = scalar_offsets(text);
  std::vector<Span> spans;
  for (const auto& [start, end] : byte_ranges) {
    spans.push_back({to_scalar[start], to_scalar[end]});
  }
  NumeralStripResult result;
  result.removed_spans = SpanSet::FromUnsorted(std::move(spans));

  // Rebuild from the merged byte ranges.
  std::vector<std::pair<std::size_t, std::size_t>> merged;
  std::sort(byte_ranges.begin(), byte_ranges.end());
  for (const auto& r : byte_ranges) {
    if (!merged.empty() && r.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  std::size_t cursor = 0;
  for (const auto& [start, end] : merged) {
    result.cleaned_text.append(text, cursor, start - cursor);
    cursor = end;
  }
  result.cleaned_text.append(text, cursor, std::string::npos);
  return result;
}

std::size_t map_offset_through_removal(const SpanSet& removed, std::size_t offset) {
  return offset - removed.covered_before(offset);
}

Segmentation segment_claim_heuristic(std::string_view claim_text) {
  const std::u32string text = utf8::decode(claim_text);
  if (std::all_of(text.begin(), text.end(), is_space)) {
    throw InvalidArgument("segment_claim_heuristic: empty claim");
  }
  Segmentation seg;
  const auto emit = [&](std::size_t start, std::size_t end) {
    while (start < end && is_space(text[start])) ++start;
    while (end > start && is_space(text[end - 1])) --end;
    if (start == end) return;
    seg.features.push_back(
        {{start, end}, utf8::encode(std::u32string_view(text).substr(start, end - start))});
  };

  std::size_t piece_start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c == ';' || c == '\n') {
      emit(piece_start, i);
      piece_start = i + 1;
    } else if (c == ':' && (i + 1 == text.size() || is_space(text[i + 1]))) {
      emit(piece_start, i + 1);
      piece_start = i + 1;
    }
  }
  emit(piece_start, text.size());
  return seg;
}

namespace {

class ReferenceScanner {
 public:
  explicit ReferenceScanner(std::string text) : text_(std::move(text)) {}

  std::set<PassageId> parse() {
    std::set<PassageId> out;
    PassageKind kind = PassageKind::kParagraph;
    while (true) {
      skip_separators();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        std::string word = read_word();
        if (word == "and" || word == "to") {
          if (word == "to") fail(start, "dangling range");
          continue;
        }
        if (word == "abstract") {
          out.insert(PassageId::Abstract());
          kind = PassageKind::kParagraph;
          continue;
        }
        kind = keyword_kind(word, start);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '[') {
        const std::size_t start = pos_;
        const int first = read_number();
        int last = first;
        const std::size_t after_first = pos_;
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == '-') {
          ++pos_;
          skip_spaces();
          last = read_number();
        } else if (text_.compare(pos_, 2, "to") == 0 && pos_ + 2 < text_.size() &&
                   !std::isalpha(static_cast<unsigned char>(text_[pos_ + 2]))) {
          pos_ += 2;
          skip_spaces();
          last = read_number();
        } else {
          pos_ = after_first;
        }
        if (last < first) fail(start, "range end before start");
        if (last - first > kMaxRange) fail(start, "range too large");
        if (first < 1) fail(start, "passage numbers start at 1");
        for (int n = first; n <= last; ++n) out.insert(PassageId::Of(kind, n));
        continue;
      }
      fail(pos_, "unexpected character");
    }
    return out;
  }

 private:
  static constexpr int kMaxRange = 100000;

  [[noreturn]] void fail(std::size_t at, const std::string& why) const {
    std::size_t end = at;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ';') ++end;
    const std::string offending = text_.substr(at, std::max<std::size_t>(end - at, 1));
    throw ParseError("unparseable reference (" + why + "): \"" + offending + "\"",
                     offending);
  }

  void skip_spaces() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ',' ||
            text_[pos_] == ';' || text_[pos_] == '&')) {
      ++pos_;
    }
  }

  std::string read_word() {
    std::string word;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') ++pos_;
    return word;
  }

  int read_number() {
    const std::size_t start = pos_;
    const bool bracketed = pos_ < text_.size() && text_[pos_] == '[';
    if (bracketed) ++pos_;
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) fail(start, "number too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail(start, "expected a number");
    if (bracketed) {
      if (pos_ >= text_.size() || text_[pos_] != ']') fail(start, "unclosed bracket");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  PassageKind keyword_kind(const std::string& word, std::size_t at) const {
    static const std::set<std::string> kParagraph = {"paragraph", "paragraphs", "par",
                                                     "pars",      "para",       "paras",
                                                     "paragr"};
    static const std::set<std::string> kClaim = {"claim", "claims", "cl"};
    if (kParagraph.contains(word)) return PassageKind::kParagraph;
    if (kClaim.contains(word)) return PassageKind::kClaim;
    fail(at, "unsupported citation keyword");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::set<PassageId> parse_reference_string(std::string_view reference) {
  std::string text(reference);
  // En and em dashes become plain range dashes.
  for (const std::string_view dash : {"\xE2\x80\x93", "\xE2\x80\x94"}) {
    for (std::size_t at = text.find(dash); at != std::string::npos; at = text.find(dash)) {
      text.replace(at, dash.size(), "-");
    }
  }
  return ReferenceScanner(std::move(text)).parse();
}

namespace {

struct WindowMatch {
  std::size_t distance = std::numeric_limits<std::size_t>::max();
  std::size_t start = 0;
  std::size_t length = 0;
};

// Minimal-distance window of `claim` at or after `from` for `feature`.
WindowMatch best_window(const std::u32string& claim, const std::u32string& feature,
                        std::size_t from, double slack) {
  const std::size_t len = feature.size();
  const auto lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(static_cast<double>(len) * (1.0 - slack))));
  const auto hi = static_cast<std::size_t>(std::ceil(static_cast<double>(len) * (1.0 + slack)));

  WindowMatch best;
  const auto better = [&](std::size_t d, std::size_t s, std::size_t w) {
    if (d != best.distance) return d < best.distance;
    if (s != best.start) return s < best.start;
    const auto gap = [&](std::size_t x) { return x > len ? x - len : len - x; };
    if (gap(w) != gap(best.length)) return gap(w) < gap(best.length);
    return w < best.length;
  };

  std::vector<std::size_t> prev(len + 1);
  std::vector<std::size_t> curr(len + 1);
  for (std::size_t s = from; s < claim.size(); ++s) {
    if (best.distance == 0) break;
    const std::size_t max_w = std::min(hi, claim.size() - s);
    if (max_w < lo) break;
    for (std::size_t i = 0; i <= len; ++i) prev[i] = i;
    for (std::size_t w = 1; w <= max_w; ++w) {
      curr[0] = w;
      std::size_t column_min = curr[0];
      const char32_t c = claim[s + w - 1];
      for (std::size_t i = 1; i <= len; ++i) {
        const std::size_t cost = feature[i - 1] == c ? 0 : 1;
        curr[i] = std::min({prev[i] + 1, curr[i - 1] + 1, prev[i - 1] + cost});
        column_min = std::min(column_min, curr[i]);
      }
      std::swap(prev, curr);
      if (w >= lo && better(prev[len], s, w)) best = {prev[len], s, w};
      // No longer window from this start can beat the best distance.
      if (column_min > best.distance) break;
    }
  }
  return best;
}

}  // namespace

LocateReport locate_feature_spans(std::string_view claim_text,
                                  const std::vector<std::string>& feature_texts,
                                  const LocateOptions& options) {
  const std::u32string claim = utf8::decode(claim_text);
  LocateReport report;
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < feature_texts.size(); ++k) {
    const std::u32string feature = utf8::decode(feature_texts[k]);
    if (feature.empty() || cursor >= claim.size()) {
      report.dropped.push_back(k);
      continue;
    }
    WindowMatch match;
    if (const std::size_t at = claim.find(feature, cursor); at != std::u32string::npos) {
      match = {0, at, feature.size()};
    } else {
      match = best_window(claim, feature, cursor, options.window_slack);
    }
    const double normalized =
        match.length == 0 ? 1.0
                          : static_cast<double>(match.distance) /
                                static_cast<double>(std::max(match.length, feature.size()));
    if (match.length == 0 || normalized > options.max_normalized_distance) {
      report.dropped.push_back(k);
      continue;
    }
    const Span span{match.start, match.start + match.length};
    report.segmentation.features.push_back(
        {span, utf8::encode(std::u32string_view(claim).substr(span.start, span.length()))});
    cursor = span.end;
  }
  return report;
}

FeatureAlignment align_features(const Segmentation& predicted, const Segmentation& gold,
                                AlignmentDistance distance) {
  if (predicted.empty() || gold.empty()) {
    throw InvalidArgument("align_features: both segmentations must be non-empty");
  }
  std::vector<std::u32string> gold_text;
  for (const Feature& g : gold.features) gold_text.push_back(utf8::decode(g.text));

  FeatureAlignment out;
  std::vector<bool> mapped(gold.size(), false);
  for (const Feature& p : predicted.features) {
    const std::u32string text = utf8::decode(p.text);
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < gold_text.size(); ++g) {
      double d = static_cast<double>(levenshtein(text, gold_text[g]));
      if (distance == AlignmentDistance::kNormalized) {
        const std::size_t longest = std::max(text.size(), gold_text[g].size());
        d = longest == 0 ? 0.0 : d / static_cast<double>(longest);
      }
      if (d < best_distance) {
        best_distance = d;
        best = g;
      }
    }
    out.predicted_to_gold.push_back(best);
    mapped[best] = true;
  }
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (!mapped[g]) out.unmapped_gold.push_back(g);
  }
  return out;
}

}  // namespace novelty
