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

// Reference examiners: random, ROUGE-L and embedding-similarity retrieval,
// and the claim-only logistic regression used to expose length and wording
// shortcuts.

#ifndef NOVELTY_BASELINES_H_
#define NOVELTY_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "novelty/embedding.h"
#include "novelty/textsim.h"
#include "novelty/types.h"

namespace novelty {

struct RandomExaminerOptions {
  // Expected number of passages retrieved per feature.
  double expected_passages = 2.0;
};

// Heuristic segmentation; each passage retrieved independently with
// probability k/|D|; verdicts uniform. The generator is seeded from
// (seed, record id) so results do not depend on processing order.
ExaminationResult random_examiner(const ExaminationRecord& record,
                                  const PriorArtDocument& doc, std::uint64_t seed,
                                  const RandomExaminerOptions& options = {});

inline constexpr double kRougeThreshold = 0.4;
inline constexpr double kEmbeddingThreshold = 0.5;

// Retrieves every passage scoring strictly above the threshold against the
// feature, best first (ties in canonical passage order). A feature is
// FullyDisclosed iff something was retrieved, otherwise NotDisclosed; the
// claim is Novel iff some feature is NotDisclosed.
ExaminationResult rouge_retrieval_examiner(const ExaminationRecord& record,
                                           const PriorArtDocument& doc,
                                           double threshold = kRougeThreshold);

// Same decision rule over cosine similarity of client embeddings. Passage
// vectors come from `cache`.
ExaminationResult embedding_retrieval_examiner(const ExaminationRecord& record,
                                               const PriorArtDocument& doc,
                                               EmbeddingClient& client,
                                               EmbeddingCache& cache,
                                               double threshold = kEmbeddingThreshold);

// --- Claim-only features ----------------------------------------------------

struct FeatureSpaceOptions {
  std::size_t top_domain_classes = 50;
  TfidfOptions tfidf;
};

// Fitted layout of a ClaimFeatureVector: fixed scalar block, domain-class
// indicators, TF-IDF block.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<std::string> domain_classes, TfidfVocabulary vocab);

  static FeatureSpace Fit(const std::vector<ExaminationRecord>& training,
                          const FeatureSpaceOptions& options = {});

  const std::vector<std::string>& domain_classes() const { return domain_classes_; }
  const TfidfVocabulary& vocabulary() const { return vocab_; }
  std::size_t dimensions() const;
  // Stable names: "word_count", "feature_count", "punct_comma", ...,
  // "class=G06F", "tfidf=<ngram>".
  std::vector<std::string> feature_names() const;

 private:
  std::vector<std::string> domain_classes_;
  TfidfVocabulary vocab_;
};

inline constexpr std::size_t kScalarClaimFeatures = 7;

struct ClaimFeatureVector {
  std::vector<double> values;
};

ClaimFeatureVector extract_claim_features(std::string_view claim_text,
                                          const std::vector<std::string>& domain_classes,
                                          const FeatureSpace& space);

// --- Logistic regression ----------------------------------------------------

struct LogRegOptions {
  double l2 = 1.0;
  int iterations = 500;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

struct LogRegModel {
  FeatureSpace space;
  std::vector<double> mean;
  std::vector<double> stddev;  // > 0; constant columns get 1
  std::vector<double> weights;
  double bias = 0.0;
  LogRegOptions options;

  std::size_t dimensions() const { return weights.size(); }
};

// Standardizes columns, then minimizes
//   mean log-loss + l2 / (2 N) * |w|^2
// by full-batch gradient descent from zero weights. Label Novel is the
// positive class. Throws InvalidArgument with fewer than two examples or a
// single class.
LogRegModel train_logreg(const std::vector<ClaimFeatureVector>& vectors,
                         const std::vector<NoveltyLabel>& labels,
                         const LogRegOptions& options = {});

struct LogRegPrediction {
  ClaimVerdict verdict = ClaimVerdict::kNotNovel;
  double probability = 0.5;  // P(Novel)
};

// Novel iff probability > 0.5. Throws DimensionError on size mismatch.
LogRegPrediction predict_logreg(const LogRegModel& model, const ClaimFeatureVector& vector);

// Fits the feature space on `training` and trains on it.
LogRegModel train_claim_classifier(const std::vector<ExaminationRecord>& training,
                                   const FeatureSpaceOptions& space_options = {},
                                   const LogRegOptions& options = {});
LogRegPrediction predict_claim(const LogRegModel& model, const ExaminationRecord& record);

// Claim-level only: the result carries the predicted claim verdict and an
// empty segmentation.
ExaminationResult logreg_examiner(const ExaminationRecord& record, const LogRegModel& model);

// Features by |weight| descending, ties by name.
std::vector<std::pair<std::string, double>> top_coefficients(const LogRegModel& model,
                                                             std::size_t k);

}  // namespace novelty

#endif  // NOVELTY_BASELINES_H_
