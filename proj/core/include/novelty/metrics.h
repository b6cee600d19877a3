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

// Evaluation protocol for the three sub-tasks: passage retrieval (hard and
// soft set metrics, nDCG) at claim and feature level, novel feature
// identification over character ranges, and claim classification, plus
// Cohen's kappa agreement between runs.

#ifndef NOVELTY_METRICS_H_
#define NOVELTY_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "novelty/claim_text.h"
#include "novelty/types.h"

namespace novelty {

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f1 = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

// Harmonic mean, 0 when both are 0.
double harmonic_mean(double a, double b);

// Empty-set conventions: both empty -> (1, 1, 1); nothing predicted but gold
// non-empty -> (0, 0, 0); predictions against empty gold -> (0, 1, 0).
Prf set_prf(const std::set<PassageId>& predicted, const std::set<PassageId>& gold);

// Soft precision/recall from a similarity matrix sim[i][k] between predicted
// item i and gold item k: precision averages each row maximum, recall each
// column maximum. Empty-set conventions match set_prf.
Prf soft_prf_from_similarity(const std::vector<std::vector<double>>& similarity,
                             std::size_t n_predicted, std::size_t n_gold);

// Soft precision/recall with ROUGE-L between passage texts.
Prf soft_prf(const std::vector<std::string>& predicted_texts,
             const std::vector<std::string>& gold_texts);

// Binary-gain nDCG without a rank cutoff. Throws InvalidArgument on empty gold.
double ndcg(const std::vector<PassageId>& ranked, const std::set<PassageId>& gold);

struct RetrievalOptions {
  AlignmentDistance alignment = AlignmentDistance::kRaw;
};

struct FeatureRetrievalScores {
  std::size_t gold_index = 0;
  RetrievalScores scores;
};

struct FeatureLevelResult {
  // Gold features with a non-empty reference set, in gold order.
  std::vector<FeatureRetrievalScores> per_feature;
  // Arithmetic mean over per_feature; nullopt when per_feature is empty.
  std::optional<RetrievalScores> mean;
};

// Throws EligibilityError unless the record is labelled NotNovel and carries
// its gold segmentation and references.
FeatureLevelResult eval_retrieval_feature_level(const ExaminationResult& result,
                                                const ExaminationRecord& record,
                                                const PriorArtDocument& doc,
                                                const RetrievalOptions& options = {});

RetrievalScores eval_retrieval_claim_level(const ExaminationResult& result,
                                           const ExaminationRecord& record,
                                           const PriorArtDocument& doc);

// Verdicts counted as "predicted novel" for NFI scoring.
std::set<FeatureVerdict> default_novel_verdicts();

// Throws EligibilityError unless the record is labelled Novel with added spans.
Prf eval_nfi(const ExaminationResult& result, const ExaminationRecord& record,
             const std::set<FeatureVerdict>& novel_verdicts = default_novel_verdicts());

struct ClassificationScores {
  double predicted_novel_fraction = 0.0;
  double accuracy = 0.0;
  double macro_f1 = 0.0;

  friend bool operator==(const ClassificationScores&,
                         const ClassificationScores&) = default;
};

// Throws InvalidArgument on length mismatch or empty input.
ClassificationScores eval_classification(const std::vector<ClaimVerdict>& predictions,
                                         const std::vector<NoveltyLabel>& labels);

// Throws InvalidArgument on length mismatch or empty input.
double cohens_kappa(const std::vector<ClaimVerdict>& a,
                    const std::vector<ClaimVerdict>& b);

struct KappaMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
};

using NamedRun = std::pair<std::string, std::vector<ClaimVerdict>>;

KappaMatrix agreement_matrix(const std::vector<NamedRun>& runs);

// --- Corpus-level report -----------------------------------------------------

struct RecordEval {
  std::string record_id;
  NoveltyLabel label = NoveltyLabel::kNotNovel;
  ClaimVerdict predicted = ClaimVerdict::kNotNovel;
  std::optional<RetrievalScores> claim_level;    // NotNovel records
  std::optional<RetrievalScores> feature_level;  // NotNovel with cited features
  std::size_t scored_features = 0;
  std::optional<Prf> nfi;                        // Novel records
};

struct EvalCounts {
  std::size_t records = 0;
  std::size_t retrieval = 0;          // NotNovel records
  std::size_t retrieval_features = 0; // gold features with references
  std::size_t nfi = 0;                // Novel records
  std::size_t missing_predictions = 0;
};

struct SubsetReport {
  std::string name;
  EvalCounts counts;
  RetrievalScores claim_level;
  RetrievalScores feature_level;
  Prf nfi;
  ClassificationScores classification;
};

struct EvalOptions {
  RetrievalOptions retrieval;
  std::set<FeatureVerdict> novel_verdicts = default_novel_verdicts();
};

struct EvalReport {
  std::vector<RecordEval> records;  // sorted by record id
  SubsetReport full;
  std::optional<SubsetReport> adversarial;
  std::vector<std::string> missing_record_ids;
  // How claim-level rankings are built; kept with the numbers.
  std::string claim_ranking_order = "first_occurrence_in_predicted_order";
};

// Scores `results` against `records`. Retrieval covers NotNovel records
// only, NFI covers Novel records only, classification covers every record
// with a prediction. Scores are macro-averaged over records. When
// `adversarial_ids` is non-empty a second subset report is produced for them.
EvalReport evaluate(const std::vector<ExaminationRecord>& records,
                    const std::map<std::string, PriorArtDocument, std::less<>>& docs,
                    const std::map<std::string, ExaminationResult, std::less<>>& results,
                    const std::set<std::string>& adversarial_ids = {},
                    const EvalOptions& options = {});

}  // namespace novelty

#endif  // NOVELTY_METRICS_H_
