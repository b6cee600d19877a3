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

// Claim text handling: reference-numeral stripping, heuristic segmentation,
// citation-string parsing, anchoring of free-text features back into the
// claim, and predicted-to-gold feature alignment.

#ifndef NOVELTY_CLAIM_TEXT_H_
#define NOVELTY_CLAIM_TEXT_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "novelty/types.h"

namespace novelty {

struct NumeralStripResult {
  std::string cleaned_text;
  SpanSet removed_spans;  // over the original text
};

// Removes parenthesized reference-numeral groups such as "(10)" or
// "(10, 12a)": one or more items of digits followed by at most two letters,
// separated by commas or semicolons. A single neighbouring space goes with
// the group when leaving it would double the space or strand it before
// punctuation. Other parentheses ("f(x)") are untouched.
NumeralStripResult strip_reference_numerals(std::string_view claim_text);

// Maps an offset of the original text to the cleaned text. Offsets inside a
// removed range map to the start of that range.
std::size_t map_offset_through_removal(const SpanSet& removed, std::size_t offset);

// Splits at semicolons and newlines (delimiters dropped) and after a colon
// that ends a clause (colon kept, so the preamble "A method comprising:" is
// its own feature). Each piece is trimmed; empty pieces are dropped.
// Throws InvalidArgument on empty or whitespace-only input.
Segmentation segment_claim_heuristic(std::string_view claim_text);

// Expands a citation such as "paragraphs 10-13, 16-18, 20", "claims 1-3",
// "abstract" or "[0010]-[0012]; claim 2" into passage ids. Numbers without a
// leading keyword are paragraphs. Keywords are case-insensitive.
// Throws ParseError (with the offending substring) for anything else,
// including column/line and figure citations and descending ranges.
std::set<PassageId> parse_reference_string(std::string_view reference);

struct LocateOptions {
  double max_normalized_distance = 0.5;
  double window_slack = 0.2;
};

struct LocateReport {
  Segmentation segmentation;
  // Indices into the input feature list that could not be anchored.
  std::vector<std::size_t> dropped;
};

// Anchors each feature text to the claim window of length |feature| +/- slack
// with minimal edit distance, scanning left to right from the end of the
// previous match. Ties go to the earliest start, then to the window whose
// length is closest to the feature. Matches whose distance divided by the
// longer of the two lengths exceeds the threshold are dropped.
LocateReport locate_feature_spans(std::string_view claim_text,
                                  const std::vector<std::string>& feature_texts,
                                  const LocateOptions& options = {});

enum class AlignmentDistance { kRaw, kNormalized };

struct FeatureAlignment {
  std::vector<std::size_t> predicted_to_gold;  // one entry per predicted feature
  std::vector<std::size_t> unmapped_gold;      // ascending

  friend bool operator==(const FeatureAlignment&, const FeatureAlignment&) = default;
};

// Maps every predicted feature to the gold feature with minimal Levenshtein
// distance; ties go to the lower gold index. Throws InvalidArgument when
// either segmentation is empty.
FeatureAlignment align_features(const Segmentation& predicted,
                                const Segmentation& gold,
                                AlignmentDistance distance = AlignmentDistance::kRaw);

}  // namespace novelty

#endif  // NOVELTY_CLAIM_TEXT_H_
