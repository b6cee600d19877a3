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

// Domain model shared by every stage of the workbench: claims, their
// features, prior-art documents and the outputs of an examination.
//
// All character offsets are Unicode scalar-value indices into the UTF-8
// claim text, never byte offsets.

#ifndef NOVELTY_TYPES_H_
#define NOVELTY_TYPES_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace novelty {

enum class PassageKind { kAbstract, kClaim, kParagraph };

std::string_view to_string(PassageKind kind);

// Address of one passage inside a prior-art document. The enumerator order
// of PassageKind gives the canonical order abstract < claim(n) < paragraph(m).
class PassageId {
 public:
  // The abstract.
  PassageId() = default;
  static PassageId Abstract() { return PassageId(PassageKind::kAbstract, 0); }
  // Throws InvalidArgument for number < 1.
  static PassageId Claim(int number);
  static PassageId Paragraph(int number);
  static PassageId Of(PassageKind kind, int number);

  PassageKind kind() const { return kind_; }
  // 0 for the abstract.
  int number() const { return number_; }

  // "abstract", "claim 3", "par 12". Accepted back by parse_reference_string.
  std::string label() const;

  friend auto operator<=>(const PassageId&, const PassageId&) = default;

 private:
  PassageId(PassageKind kind, int number) : kind_(kind), number_(number) {}

  PassageKind kind_ = PassageKind::kAbstract;
  int number_ = 0;
};

struct Passage {
  PassageId id;
  std::string text;
};

struct PriorArtDocument {
  std::string doc_id;
  std::vector<Passage> passages;

  const Passage* find(const PassageId& id) const;
};

// Half-open range [start, end) of scalar offsets.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end > start ? end - start : 0; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

// Sorted, pairwise-disjoint, non-adjacent, non-empty ranges.
class SpanSet {
 public:
  SpanSet() = default;
  // Sorts and merges overlapping or touching ranges; drops empty ranges.
  static SpanSet FromUnsorted(std::vector<Span> spans);

  const std::vector<Span>& ranges() const { return ranges_; }
  bool empty() const { return ranges_.empty(); }
  std::size_t total_length() const;
  std::size_t overlap_length(const SpanSet& other) const;
  SpanSet united(const SpanSet& other) const;
  // Offsets strictly below `offset` covered by the set.
  std::size_t covered_before(std::size_t offset) const;

  friend bool operator==(const SpanSet&, const SpanSet&) = default;

 private:
  std::vector<Span> ranges_;
};

struct Feature {
  Span span;
  std::string text;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct Segmentation {
  std::vector<Feature> features;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

// Examiner-cited passages per gold feature; index i belongs to feature i of
// the gold segmentation.
using FeatureReferences = std::vector<std::set<PassageId>>;

enum class NoveltyLabel { kNovel, kNotNovel };
using ClaimVerdict = NoveltyLabel;

enum class FeatureVerdict { kFullyDisclosed, kPartiallyDisclosed, kNotDisclosed };

enum class ClaimVersion { kInitial, kGranted };

std::string_view to_string(NoveltyLabel label);
std::string_view to_string(FeatureVerdict verdict);
std::string_view to_string(ClaimVersion version);

struct ExaminationRecord {
  std::string application_id;
  ClaimVersion claim_version = ClaimVersion::kInitial;
  std::string claim_text;
  NoveltyLabel novelty_label = NoveltyLabel::kNotNovel;
  std::string prior_art_doc_id;
  std::optional<Segmentation> gold_segmentation;
  std::optional<FeatureReferences> gold_references;
  std::optional<SpanSet> added_spans;
  std::vector<std::string> domain_classes;

  friend bool operator==(const ExaminationRecord&,
                         const ExaminationRecord&) = default;
};

// Stable key of a record: "<application_id>/<initial|granted>".
std::string record_id(const ExaminationRecord& record);

struct FeatureOutcome {
  std::vector<PassageId> ranked_passages;
  FeatureVerdict verdict = FeatureVerdict::kNotDisclosed;
  std::optional<std::string> summary;
  // The examination call for this feature failed; the verdict is
  // meaningless and the feature is left out of aggregation and NFI scoring.
  bool errored = false;

  friend bool operator==(const FeatureOutcome&, const FeatureOutcome&) = default;
};

struct ExaminationResult {
  std::string record_id;
  Segmentation predicted_segmentation;
  std::vector<FeatureOutcome> features;  // aligned with predicted_segmentation
  ClaimVerdict claim_verdict = ClaimVerdict::kNotNovel;

  friend bool operator==(const ExaminationResult&,
                         const ExaminationResult&) = default;
};

struct RetrievalScores {
  double p = 0.0;
  double soft_p = 0.0;
  double r = 0.0;
  double soft_r = 0.0;
  double f1 = 0.0;
  double soft_f1 = 0.0;
  double ndcg = 0.0;

  friend bool operator==(const RetrievalScores&,
                         const RetrievalScores&) = default;
};

struct Violation {
  std::string code;     // machine-readable, e.g. "missing_gold_references"
  std::string message;  // human-readable detail

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Checks every record invariant against the linked document. Violations are
// returned as data; nothing is thrown and nothing is mutated.
std::vector<Violation> validate_record(const ExaminationRecord& record,
                                       const PriorArtDocument& doc);

// Document-only invariants (id ordering, single abstract, non-empty text).
std::vector<Violation> validate_document(const PriorArtDocument& doc);

// Structural checks for an examination result against its document.
std::vector<Violation> validate_result(const ExaminationResult& result,
                                       const ExaminationRecord& record,
                                       const PriorArtDocument& doc);

std::vector<PassageId> canonical_passage_order(const std::set<PassageId>& ids);
std::vector<PassageId> canonical_passage_order(std::vector<PassageId> ids);

}  // namespace novelty

#endif  // NOVELTY_TYPES_H_
