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

// Dataset hygiene: length stratification, application-grouped splitting,
// adversarial filtering, corpus-wide numeral removal and citation overlap.
//
// Every randomized operation is a pure function of its inputs and seed:
// records are sorted by id before any sampling.

#ifndef NOVELTY_DATASET_OPS_H_
#define NOVELTY_DATASET_OPS_H_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "novelty/types.h"

namespace novelty {

// Word count (tokenize length) used as claim length throughout.
std::size_t claim_length(const ExaminationRecord& record);

// Equal-width bin of `length` over [min_length, max_length].
std::size_t length_bin(std::size_t length, std::size_t min_length,
                       std::size_t max_length, std::size_t n_bins);

// Bins records by claim length and, within each bin, subsamples the majority
// class down to the minority count. Bins holding a single class are dropped.
// Returns retained record ids, sorted. Throws InvalidArgument for n_bins == 0.
std::vector<std::string> stratify_balance(const std::vector<ExaminationRecord>& records,
                                          std::size_t n_bins, std::uint64_t seed);

enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct SplitEntry {
  Split split = Split::kTrain;
  bool adversarial = false;

  friend bool operator==(const SplitEntry&, const SplitEntry&) = default;
};

using SplitAssignment = std::map<std::string, SplitEntry, std::less<>>;

using SplitRatios = std::array<double, 3>;
inline constexpr SplitRatios kDefaultSplitRatios = {0.40, 0.10, 0.50};

// Largest-remainder apportionment of `total` units to `ratios`. Any residue
// left by floating-point rounding is absorbed by the last bucket.
std::array<std::size_t, 3> apportion(std::size_t total, const SplitRatios& ratios);

// Shuffles applications (not records) with the seed and assigns contiguous
// blocks by ratio, so both claims of one application share a split.
// Throws InvalidArgument unless the ratios are non-negative and sum to 1.
SplitAssignment split(const std::vector<ExaminationRecord>& records,
                      const SplitRatios& ratios, std::uint64_t seed);

// Keeps the records the filter model misclassifies, then subsamples the
// majority class to the minority count. Returns sorted record ids. Throws
// InvalidArgument if any record lacks a prediction.
std::vector<std::string> adversarial_filter(
    const std::vector<ExaminationRecord>& test_records,
    const std::map<std::string, ClaimVerdict, std::less<>>& filter_predictions,
    std::uint64_t seed);

// Strips reference numerals from every claim and remaps gold feature spans
// and added spans through the removal. Features that vanish entirely are
// dropped along with their references.
std::vector<ExaminationRecord> strip_corpus_numerals(
    const std::vector<ExaminationRecord>& records);

// |coarse ∩ fine| / |coarse|; 1 when coarse is empty.
double citation_overlap(const std::set<PassageId>& coarse,
                        const std::set<PassageId>& fine);

}  // namespace novelty

#endif  // NOVELTY_DATASET_OPS_H_
