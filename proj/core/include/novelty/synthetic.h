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

// Seeded generator of small examination corpora with complete ground truth.
//
// Each application yields an initial claim (labelled NotNovel, every feature
// paraphrased into the prior-art document and cited) and a granted claim
// (labelled Novel) obtained by inserting undisclosed features right after
// the preamble. Every feature has the same word count, so claim length and
// feature count carry the same information for both classes; the optional
// length skew inserts several features into granted claims instead of one.

#ifndef NOVELTY_SYNTHETIC_H_
#define NOVELTY_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "novelty/types.h"

namespace novelty {

struct SynthOptions {
  std::size_t min_features = 2;
  std::size_t max_features = 14;
  // Features inserted into a granted claim without skew.
  std::size_t added_features = 1;
  bool length_skew = false;
  // With skew, granted claims receive this many inserted features.
  std::size_t skew_min_added = 9;
  std::size_t skew_max_added = 13;
  std::size_t distractor_paragraphs = 6;
  // Adds reference numerals such as "(12)" to granted claims only.
  bool reference_numerals = false;
};

struct SyntheticCorpus {
  std::vector<ExaminationRecord> records;  // initial, granted per application
  std::vector<PriorArtDocument> documents;
};

// Words per generated feature.
inline constexpr std::size_t kSynthFeatureWords = 7;

SyntheticCorpus generate_synthetic_corpus(std::uint64_t seed,
                                          std::size_t n_applications,
                                          const SynthOptions& options = {});

}  // namespace novelty

#endif  // NOVELTY_SYNTHETIC_H_
