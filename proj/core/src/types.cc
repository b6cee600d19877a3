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

#include "novelty/types.h"

#include <algorithm>

#include "novelty/errors.h"
#include "novelty/utf8.h"

namespace novelty {

std::string_view to_string(PassageKind kind) {
  switch (kind) {
    case PassageKind::kAbstract: return "abstract";
    case PassageKind::kClaim: return "claim";
    case PassageKind::kParagraph: return "paragraph";
  }
  return "?";
}

std::string_view to_string(NoveltyLabel label) {
  return label == NoveltyLabel::kNovel ? "novel" : "not_novel";
}

std::string_view to_string(FeatureVerdict verdict) {
  switch (verdict) {
    case FeatureVerdict::kFullyDisclosed: return "fully_disclosed";
    case FeatureVerdict::kPartiallyDisclosed: return "partially_disclosed";
    case FeatureVerdict::kNotDisclosed: return "not_disclosed";
  }
  return "?";
}

std::string_view to_string(ClaimVersion version) {
  return version == ClaimVersion::kInitial ? "initial" : "granted";
}

PassageId PassageId::Claim(int number) { return Of(PassageKind::kClaim, number); }

PassageId PassageId::Paragraph(int number) {
  return Of(PassageKind::kParagraph, number);
}

PassageId PassageId::Of(PassageKind kind, int number) {
  if (kind == PassageKind::kAbstract) return Abstract();
  if (number < 1) {
    throw InvalidArgument(std::string(to_string(kind)) +
                          " number must be positive, got " + std::to_string(number));
  }
  return PassageId(kind, number);
}

std::string PassageId::label() const {
  switch (kind_) {
    case PassageKind::kAbstract: return "abstract";
    case PassageKind::kClaim: return "claim " + std::to_string(number_);
    case PassageKind::kParagraph: return "par " + std::to_string(number_);
  }
  return {};
}

const Passage* PriorArtDocument::find(const PassageId& id) const {
  // Passages are kept in canonical order; fall back to a scan when the
  // document has not been validated.
  auto it = std::lower_bound(passages.begin(), passages.end(), id,
                             [](const Passage& p, const PassageId& v) { return p.id < v; });
  if (it != passages.end() && it->id == id) return &*it;
  for (const Passage& p : passages) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

SpanSet SpanSet::FromUnsorted(std::vector<Span> spans) {
  std::erase_if(spans, [](const Span& s) { return s.end <= s.start; });
  std::sort(spans.begin(), spans.end());
  SpanSet out;
  for (const Span& s : spans) {
    if (!out.ranges_.empty() && s.start <= out.ranges_.back().end) {
      out.ranges_.back().end = std::max(out.ranges_.back().end, s.end);
    } else {
      out.ranges_.push_back(s);
    }
  }
  return out;
}

std::size_t SpanSet::total_length() const {
  std::size_t total = 0;
  for (const Span& s : ranges_) total += s.length();
  return total;
}

std::size_t SpanSet::overlap_length(const SpanSet& other) const {
  std::size_t total = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = ranges_;
  const auto& b = other.ranges_;
  while (i < a.size() && j < b.size()) {
    const std::size_t lo = std::max(a[i].start, b[j].start);
    const std::size_t hi = std::min(a[i].end, b[j].end);
    if (lo < hi) total += hi - lo;
    if (a[i].end < b[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

SpanSet SpanSet::united(const SpanSet& other) const {
  std::vector<Span> all = ranges_;
  all.insert(all.end(), other.ranges_.begin(), other.ranges_.end());
  return FromUnsorted(std::move(all));
}

std::size_t SpanSet::covered_before(std::size_t offset) const {
  std::size_t total = 0;
  for (const Span& s : ranges_) {
    if (s.start >= offset) break;
    total += std::min(s.end, offset) - s.start;
  }
  return total;
}

std::string record_id(const ExaminationRecord& record) {
  return record.application_id + "/" + std::string(to_string(record.claim_version));
}

namespace {

void add(std::vector<Violation>& out, std::string code, std::string message) {
  out.push_back({std::move(code), std::move(message)});
}

std::string span_text(const Span& s) {
  return "[" + std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
}

// Feature bounds, slice equality, ordering and non-overlap.
void check_segmentation(const Segmentation& seg, const std::u32string& claim,
                        const std::string& what, std::vector<Violation>& out) {
  for (std::size_t i = 0; i < seg.features.size(); ++i) {
    const Feature& f = seg.features[i];
    const std::string where = what + " feature " + std::to_string(i);
    if (!(f.span.start < f.span.end && f.span.end <= claim.size())) {
      add(out, "feature_out_of_bounds",
          where + " span " + span_text(f.span) + " outside claim of length " +
              std::to_string(claim.size()));
      continue;
    }
    const std::string slice = utf8::encode(
        std::u32string_view(claim).substr(f.span.start, f.span.length()));
    if (slice != f.text) {
      add(out, "feature_text_mismatch",
          where + " text \"" + f.text + "\" differs from claim slice \"" + slice + "\"");
    }
    if (i > 0) {
      const Feature& prev = seg.features[i - 1];
      if (f.span.start < prev.span.start) {
        add(out, "features_unordered", where + " starts before feature " +
                                           std::to_string(i - 1));
      } else if (f.span.start < prev.span.end) {
        add(out, "features_overlap", where + " " + span_text(f.span) +
                                         " overlaps feature " + std::to_string(i - 1) +
                                         " " + span_text(prev.span));
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_document(const PriorArtDocument& doc) {
  std::vector<Violation> out;
  if (doc.doc_id.empty()) add(out, "empty_doc_id", "document without doc_id");
  std::size_t abstracts = 0;
  for (std::size_t i = 0; i < doc.passages.size(); ++i) {
    const Passage& p = doc.passages[i];
    if (p.id.kind() == PassageKind::kAbstract) ++abstracts;
    if (p.text.empty()) {
      add(out, "empty_passage", doc.doc_id + ": passage " + p.id.label() + " is empty");
    }
    if (i > 0 && !(doc.passages[i - 1].id < p.id)) {
      add(out, "passages_unordered",
          doc.doc_id + ": passage " + p.id.label() + " does not follow " +
              doc.passages[i - 1].id.label() + " in canonical order");
    }
  }
  if (abstracts > 1) {
    add(out, "multiple_abstracts", doc.doc_id + ": " + std::to_string(abstracts) +
                                       " abstract passages");
  }
  return out;
}

std::vector<Violation> validate_record(const ExaminationRecord& record,
                                       const PriorArtDocument& doc) {
  std::vector<Violation> out;
  const std::u32string claim = utf8::decode(record.claim_text);
  if (claim.empty()) add(out, "empty_claim", "claim_text is empty");
  if (record.prior_art_doc_id != doc.doc_id) {
    add(out, "document_mismatch", "record cites " + record.prior_art_doc_id +
                                      " but was checked against " + doc.doc_id);
  }

  if (record.novelty_label == NoveltyLabel::kNotNovel) {
    if (!record.gold_segmentation) {
      add(out, "missing_gold_segmentation",
          "not-novel record requires gold_segmentation");
    }
    if (!record.gold_references) {
      add(out, "missing_gold_references", "not-novel record requires gold_references");
    }
  } else if (!record.added_spans) {
    add(out, "missing_added_spans", "novel record requires added_spans");
  }

  if (record.gold_segmentation) {
    check_segmentation(*record.gold_segmentation, claim, "gold", out);
  }
  if (record.gold_references) {
    const FeatureReferences& refs = *record.gold_references;
    if (record.gold_segmentation &&
        refs.size() != record.gold_segmentation->features.size()) {
      add(out, "references_misaligned",
          "gold_references has " + std::to_string(refs.size()) +
              " entries for " + std::to_string(record.gold_segmentation->features.size()) +
              " gold features");
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      for (const PassageId& id : refs[i]) {
        if (doc.find(id) == nullptr) {
          add(out, "unresolvable_reference",
              "feature " + std::to_string(i) + " cites " + id.label() +
                  " which is not in " + doc.doc_id);
        }
      }
    }
  }
  if (record.added_spans) {
    for (const Span& s : record.added_spans->ranges()) {
      if (s.end > claim.size()) {
        add(out, "added_span_out_of_bounds",
            "added span " + span_text(s) + " outside claim of length " +
                std::to_string(claim.size()));
      }
    }
  }
  return out;
}

std::vector<Violation> validate_result(const ExaminationResult& result,
                                       const ExaminationRecord& record,
                                       const PriorArtDocument& doc) {
  std::vector<Violation> out;
  if (result.features.size() != result.predicted_segmentation.features.size()) {
    add(out, "outcomes_misaligned",
        std::to_string(result.features.size()) + " feature outcomes for " +
            std::to_string(result.predicted_segmentation.features.size()) +
            " predicted features");
  }
  check_segmentation(result.predicted_segmentation, utf8::decode(record.claim_text),
                     "predicted", out);
  for (std::size_t i = 0; i < result.features.size(); ++i) {
    const auto& ranked = result.features[i].ranked_passages;
    std::set<PassageId> seen;
    for (const PassageId& id : ranked) {
      if (!seen.insert(id).second) {
        add(out, "duplicate_passage",
            "feature " + std::to_string(i) + " lists " + id.label() + " twice");
      }
      if (doc.find(id) == nullptr) {
        add(out, "unresolvable_reference",
            "feature " + std::to_string(i) + " retrieves unknown " + id.label());
      }
    }
  }
  return out;
}

std::vector<PassageId> canonical_passage_order(const std::set<PassageId>& ids) {
  return {ids.begin(), ids.end()};
}

std::vector<PassageId> canonical_passage_order(std::vector<PassageId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace novelty
