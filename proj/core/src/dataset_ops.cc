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

#include "novelty/dataset_ops.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "novelty/claim_text.h"
#include "novelty/errors.h"
#include "novelty/textsim.h"
#include "novelty/utf8.h"

namespace novelty {

std::size_t claim_length(const ExaminationRecord& record) {
  return tokenize(record.claim_text).size();
}

std::size_t length_bin(std::size_t length, std::size_t min_length, std::size_t max_length,
                       std::size_t n_bins) {
  if (n_bins == 0) throw InvalidArgument("length_bin: n_bins must be >= 1");
  if (max_length <= min_length || length <= min_length) return 0;
  const std::size_t bin = (length - min_length) * n_bins / (max_length - min_length);
  return std::min(bin, n_bins - 1);
}

namespace {

std::vector<const ExaminationRecord*> sorted_by_id(
    const std::vector<ExaminationRecord>& records) {
  std::vector<const ExaminationRecord*> out;
  out.reserve(records.size());
  for (const ExaminationRecord& r : records) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    return record_id(*a) < record_id(*b);
  });
  return out;
}

// Keeps `keep` of `ids` chosen uniformly with `rng`.
void subsample(std::vector<std::string>& ids, std::size_t keep, std::mt19937_64& rng) {
  if (ids.size() <= keep) return;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(keep);
}

void balance_into(std::vector<std::string> novel, std::vector<std::string> not_novel,
                  std::mt19937_64& rng, std::vector<std::string>& out) {
  const std::size_t m = std::min(novel.size(), not_novel.size());
  subsample(novel, m, rng);
  subsample(not_novel, m, rng);
  out.insert(out.end(), novel.begin(), novel.end());
  out.insert(out.end(), not_novel.begin(), not_novel.end());
}

}  // namespace

std::vector<std::string> stratify_balance(const std::vector<ExaminationRecord>& records,
                                          std::size_t n_bins, std::uint64_t seed) {
  if (n_bins == 0) throw InvalidArgument("stratify_balance: n_bins must be >= 1");
  if (records.empty()) return {};
  const auto ordered = sorted_by_id(records);
  std::vector<std::size_t> lengths;
  lengths.reserve(ordered.size());
  for (const auto* r : ordered) lengths.push_back(claim_length(*r));
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());

  std::vector<std::vector<std::string>> novel(n_bins), not_novel(n_bins);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const std::size_t bin = length_bin(lengths[i], *lo, *hi, n_bins);
    auto& bucket = ordered[i]->novelty_label == NoveltyLabel::kNovel ? novel : not_novel;
    bucket[bin].push_back(record_id(*ordered[i]));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::string> kept;
  for (std::size_t b = 0; b < n_bins; ++b) {
    balance_into(std::move(novel[b]), std::move(not_novel[b]), rng, kept);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "unknown";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "val") return Split::kVal;
  if (text == "test") return Split::kTest;
  throw ParseError("unknown split", std::string(text));
}

std::array<std::size_t, 3> apportion(std::size_t total, const SplitRatios& ratios) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw InvalidArgument("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("split ratios must sum to 1, got " + std::to_string(sum));
  }
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = ratios[i] * static_cast<double>(total);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t k = 0; assigned < total && k < 3; ++k, ++assigned) {
    ++counts[order[k]];
  }
  if (assigned > total) {
    // Floating error over-assigned; take it back from the last bucket.
    counts[2] -= assigned - total;
  } else {
    counts[2] += total - assigned;
  }
  return counts;
}

SplitAssignment split(const std::vector<ExaminationRecord>& records,
                      const SplitRatios& ratios, std::uint64_t seed) {
  std::vector<std::string> apps;
  for (const ExaminationRecord& r : records) apps.push_back(r.application_id);
  std::sort(apps.begin(), apps.end());
  apps.erase(std::unique(apps.begin(), apps.end()), apps.end());
  const auto counts = apportion(apps.size(), ratios);

  std::mt19937_64 rng(seed);
  std::shuffle(apps.begin(), apps.end(), rng);
  std::map<std::string, Split, std::less<>> app_split;
  std::size_t i = 0;
  for (std::size_t bucket = 0; bucket < 3; ++bucket) {
    for (std::size_t k = 0; k < counts[bucket]; ++k, ++i) {
      app_split[apps[i]] = static_cast<Split>(bucket);
    }
  }
  SplitAssignment out;
  for (const ExaminationRecord& r : records) {
    out[record_id(r)] = SplitEntry{app_split.at(r.application_id), false};
  }
  return out;
}

std::vector<std::string> adversarial_filter(
    const std::vector<ExaminationRecord>& test_records,
    const std::map<std::string, ClaimVerdict, std::less<>>& filter_predictions,
    std::uint64_t seed) {
  std::vector<std::string> novel, not_novel;
  for (const auto* r : sorted_by_id(test_records)) {
    const std::string id = record_id(*r);
    auto it = filter_predictions.find(id);
    if (it == filter_predictions.end()) {
      throw InvalidArgument("adversarial_filter: no filter prediction for " + id);
    }
    if (it->second == r->novelty_label) continue;
    (r->novelty_label == NoveltyLabel::kNovel ? novel : not_novel).push_back(id);
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> kept;
  balance_into(std::move(novel), std::move(not_novel), rng, kept);
  std::sort(kept.begin(), kept.end());
  return kept;
}

namespace {

std::optional<Span> remap(const SpanSet& removed, Span span) {
  const std::size_t start = map_offset_through_removal(removed, span.start);
  const std::size_t end = map_offset_through_removal(removed, span.end);
  if (end <= start) return std::nullopt;
  return Span{start, end};
}

}  // namespace

std::vector<ExaminationRecord> strip_corpus_numerals(
    const std::vector<ExaminationRecord>& records) {
  std::vector<ExaminationRecord> out;
  out.reserve(records.size());
  for (const ExaminationRecord& record : records) {
    NumeralStripResult stripped = strip_reference_numerals(record.claim_text);
    ExaminationRecord cleaned = record;
    if (stripped.removed_spans.empty()) {
      out.push_back(std::move(cleaned));
      continue;
    }
    cleaned.claim_text = std::move(stripped.cleaned_text);
    const SpanSet& removed = stripped.removed_spans;

    if (record.gold_segmentation) {
      Segmentation seg;
      FeatureReferences refs;
      const auto& features = record.gold_segmentation->features;
      for (std::size_t i = 0; i < features.size(); ++i) {
        const std::optional<Span> span = remap(removed, features[i].span);
        if (!span) continue;
        seg.features.push_back(
            {*span, utf8::slice(cleaned.claim_text, span->start, span->end)});
        if (record.gold_references && i < record.gold_references->size()) {
          refs.push_back((*record.gold_references)[i]);
        }
      }
      cleaned.gold_segmentation = std::move(seg);
      if (record.gold_references) cleaned.gold_references = std::move(refs);
    }
    if (record.added_spans) {
      std::vector<Span> spans;
      for (const Span& s : record.added_spans->ranges()) {
        if (auto m = remap(removed, s)) spans.push_back(*m);
      }
      cleaned.added_spans = SpanSet::FromUnsorted(std::move(spans));
    }
    out.push_back(std::move(cleaned));
  }
  return out;
}

double citation_overlap(const std::set<PassageId>& coarse, const std::set<PassageId>& fine) {
  if (coarse.empty()) return 1.0;
  std::size_t shared = 0;
  for (const PassageId& id : coarse) shared += fine.contains(id) ? 1 : 0;
  return static_cast<double>(shared) / static_cast<double>(coarse.size());
}

}  // namespace novelty
