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

#include "novelty/metrics.h"

#include <algorithm>
#include <cmath>

#include "novelty/errors.h"
#include "novelty/textsim.h"

namespace novelty {

double harmonic_mean(double a, double b) {
  return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
}

namespace {

// Shared empty-set conventions; nullopt when both sides are non-empty.
std::optional<Prf> empty_convention(std::size_t n_predicted, std::size_t n_gold) {
  if (n_predicted == 0 && n_gold == 0) return Prf{1.0, 1.0, 1.0};
  if (n_predicted == 0) return Prf{0.0, 0.0, 0.0};
  if (n_gold == 0) return Prf{0.0, 1.0, 0.0};
  return std::nullopt;
}

}  // namespace

Prf set_prf(const std::set<PassageId>& predicted, const std::set<PassageId>& gold) {
  if (auto c = empty_convention(predicted.size(), gold.size())) return *c;
  std::size_t hits = 0;
  for (const PassageId& id : predicted) hits += gold.contains(id) ? 1 : 0;
  const double p = static_cast<double>(hits) / static_cast<double>(predicted.size());
  const double r = static_cast<double>(hits) / static_cast<double>(gold.size());
  return {p, r, harmonic_mean(p, r)};
}

Prf soft_prf_from_similarity(const std::vector<std::vector<double>>& similarity,
                             std::size_t n_predicted, std::size_t n_gold) {
  if (auto c = empty_convention(n_predicted, n_gold)) return *c;
  double p = 0.0;
  for (std::size_t i = 0; i < n_predicted; ++i) {
    p += *std::max_element(similarity[i].begin(), similarity[i].begin() +
                                                      static_cast<long>(n_gold));
  }
  double r = 0.0;
  for (std::size_t k = 0; k < n_gold; ++k) {
    double best = 0.0;
    for (std::size_t i = 0; i < n_predicted; ++i) best = std::max(best, similarity[i][k]);
    r += best;
  }
  p /= static_cast<double>(n_predicted);
  r /= static_cast<double>(n_gold);
  return {p, r, harmonic_mean(p, r)};
}

Prf soft_prf(const std::vector<std::string>& predicted_texts,
             const std::vector<std::string>& gold_texts) {
  std::vector<TokenSeq> gold_tokens;
  gold_tokens.reserve(gold_texts.size());
  for (const std::string& g : gold_texts) gold_tokens.push_back(tokenize(g));
  std::vector<std::vector<double>> sim(predicted_texts.size(),
                                       std::vector<double>(gold_texts.size(), 0.0));
  for (std::size_t i = 0; i < predicted_texts.size(); ++i) {
    const TokenSeq tokens = tokenize(predicted_texts[i]);
    for (std::size_t k = 0; k < gold_tokens.size(); ++k) {
      sim[i][k] = rouge_l(tokens, gold_tokens[k]);
    }
  }
  return soft_prf_from_similarity(sim, predicted_texts.size(), gold_texts.size());
}

double ndcg(const std::vector<PassageId>& ranked, const std::set<PassageId>& gold) {
  if (gold.empty()) throw InvalidArgument("ndcg: empty gold set");
  double dcg = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (gold.contains(ranked[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  double idcg = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / idcg;
}

namespace {

void require_not_novel(const ExaminationRecord& record) {
  if (record.novelty_label != NoveltyLabel::kNotNovel) {
    throw EligibilityError("retrieval is only scored on not-novel claims (" +
                           record_id(record) + ")");
  }
  if (!record.gold_segmentation || !record.gold_references) {
    throw EligibilityError("record " + record_id(record) +
                           " lacks gold segmentation or references");
  }
}

std::vector<std::string> passage_texts(const std::vector<PassageId>& ids,
                                       const PriorArtDocument& doc) {
  std::vector<std::string> out;
  for (const PassageId& id : ids) {
    if (const Passage* p = doc.find(id)) out.push_back(p->text);
  }
  return out;
}

void append_unique(std::vector<PassageId>& ranking, std::set<PassageId>& seen,
                   const std::vector<PassageId>& more) {
  for (const PassageId& id : more) {
    if (seen.insert(id).second) ranking.push_back(id);
  }
}

RetrievalScores score_retrieval(const std::vector<PassageId>& ranking,
                                 const std::set<PassageId>& gold,
                                 const PriorArtDocument& doc) {
  const std::set<PassageId> predicted(ranking.begin(), ranking.end());
  const Prf hard = set_prf(predicted, gold);
  const Prf soft = soft_prf(passage_texts(canonical_passage_order(predicted), doc),
                            passage_texts(canonical_passage_order(gold), doc));
  RetrievalScores s;
  s.p = hard.p;
  s.r = hard.r;
  s.f1 = hard.f1;
  s.soft_p = soft.p;
  s.soft_r = soft.r;
  s.soft_f1 = soft.f1;
  s.ndcg = gold.empty() ? (ranking.empty() ? 1.0 : 0.0) : ndcg(ranking, gold);
  return s;
}

RetrievalScores mean_scores(const std::vector<RetrievalScores>& all) {
  RetrievalScores m;
  if (all.empty()) return m;
  for (const RetrievalScores& s : all) {
    m.p += s.p;
    m.soft_p += s.soft_p;
    m.r += s.r;
    m.soft_r += s.soft_r;
    m.f1 += s.f1;
    m.soft_f1 += s.soft_f1;
    m.ndcg += s.ndcg;
  }
  const double n = static_cast<double>(all.size());
  m.p /= n;
  m.soft_p /= n;
  m.r /= n;
  m.soft_r /= n;
  m.f1 /= n;
  m.soft_f1 /= n;
  m.ndcg /= n;
  return m;
}

}  // namespace

FeatureLevelResult eval_retrieval_feature_level(const ExaminationResult& result,
                                                const ExaminationRecord& record,
                                                const PriorArtDocument& doc,
                                                const RetrievalOptions& options) {
  require_not_novel(record);
  const Segmentation& gold = *record.gold_segmentation;
  const FeatureReferences& refs = *record.gold_references;

  // Ranked, deduplicated retrieval per gold feature, in predicted order.
  std::vector<std::vector<PassageId>> per_gold(gold.size());
  if (!result.predicted_segmentation.empty() && !gold.empty()) {
    const FeatureAlignment alignment =
        align_features(result.predicted_segmentation, gold, options.alignment);
    std::vector<std::set<PassageId>> seen(gold.size());
    for (std::size_t i = 0; i < alignment.predicted_to_gold.size(); ++i) {
      const std::size_t g = alignment.predicted_to_gold[i];
      if (i < result.features.size()) {
        append_unique(per_gold[g], seen[g], result.features[i].ranked_passages);
      }
    }
  }

  FeatureLevelResult out;
  std::vector<RetrievalScores> scores;
  for (std::size_t g = 0; g < gold.size() && g < refs.size(); ++g) {
    if (refs[g].empty()) continue;
    out.per_feature.push_back({g, score_retrieval(per_gold[g], refs[g], doc)});
    scores.push_back(out.per_feature.back().scores);
  }
  if (!scores.empty()) out.mean = mean_scores(scores);
  return out;
}

RetrievalScores eval_retrieval_claim_level(const ExaminationResult& result,
                                           const ExaminationRecord& record,
                                           const PriorArtDocument& doc) {
  require_not_novel(record);
  std::set<PassageId> gold;
  for (const auto& ids : *record.gold_references) gold.insert(ids.begin(), ids.end());
  std::vector<PassageId> ranking;
  std::set<PassageId> seen;
  for (const FeatureOutcome& f : result.features) {
    append_unique(ranking, seen, f.ranked_passages);
  }
  return score_retrieval(ranking, gold, doc);
}

std::set<FeatureVerdict> default_novel_verdicts() {
  return {FeatureVerdict::kNotDisclosed, FeatureVerdict::kPartiallyDisclosed};
}

Prf eval_nfi(const ExaminationResult& result, const ExaminationRecord& record,
             const std::set<FeatureVerdict>& novel_verdicts) {
  if (record.novelty_label != NoveltyLabel::kNovel || !record.added_spans) {
    throw EligibilityError("novel feature identification is only scored on novel claims "
                           "with added spans (" + record_id(record) + ")");
  }
  std::vector<Span> spans;
  const auto& features = result.predicted_segmentation.features;
  for (std::size_t i = 0; i < features.size() && i < result.features.size(); ++i) {
    const FeatureOutcome& outcome = result.features[i];
    if (!outcome.errored && novel_verdicts.contains(outcome.verdict)) {
      spans.push_back(features[i].span);
    }
  }
  const SpanSet predicted = SpanSet::FromUnsorted(std::move(spans));
  const SpanSet& gold = *record.added_spans;
  const std::size_t n_pred = predicted.total_length();
  const std::size_t n_gold = gold.total_length();
  if (auto c = empty_convention(n_pred, n_gold)) return *c;
  const double overlap = static_cast<double>(predicted.overlap_length(gold));
  const double p = overlap / static_cast<double>(n_pred);
  const double r = overlap / static_cast<double>(n_gold);
  return {p, r, harmonic_mean(p, r)};
}

ClassificationScores eval_classification(const std::vector<ClaimVerdict>& predictions,
                                         const std::vector<NoveltyLabel>& labels) {
  if (predictions.size() != labels.size()) {
    throw InvalidArgument("eval_classification: " + std::to_string(predictions.size()) +
                          " predictions for " + std::to_string(labels.size()) + " labels");
  }
  if (predictions.empty()) throw InvalidArgument("eval_classification: no predictions");
  const double n = static_cast<double>(predictions.size());
  std::size_t correct = 0;
  std::size_t novel = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    correct += predictions[i] == labels[i] ? 1 : 0;
    novel += predictions[i] == NoveltyLabel::kNovel ? 1 : 0;
  }
  double f1_sum = 0.0;
  int classes = 0;
  for (NoveltyLabel c : {NoveltyLabel::kNovel, NoveltyLabel::kNotNovel}) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const bool pred = predictions[i] == c;
      const bool gold = labels[i] == c;
      tp += pred && gold;
      fp += pred && !gold;
      fn += !pred && gold;
    }
    if (tp + fp + fn == 0) continue;  // class absent on both sides
    ++classes;
    f1_sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  }
  return {static_cast<double>(novel) / n, static_cast<double>(correct) / n,
          classes > 0 ? f1_sum / classes : 0.0};
}

double cohens_kappa(const std::vector<ClaimVerdict>& a, const std::vector<ClaimVerdict>& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("cohens_kappa: runs of length " + std::to_string(a.size()) +
                          " and " + std::to_string(b.size()));
  }
  if (a.empty()) throw InvalidArgument("cohens_kappa: empty runs");
  const double n = static_cast<double>(a.size());
  std::size_t agree = 0, a_novel = 0, b_novel = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i];
    a_novel += a[i] == NoveltyLabel::kNovel;
    b_novel += b[i] == NoveltyLabel::kNovel;
  }
  const double p_o = static_cast<double>(agree) / n;
  const double pa = static_cast<double>(a_novel) / n;
  const double pb = static_cast<double>(b_novel) / n;
  const double p_e = pa * pb + (1.0 - pa) * (1.0 - pb);
  if (p_e >= 1.0) return a == b ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

KappaMatrix agreement_matrix(const std::vector<NamedRun>& runs) {
  KappaMatrix m;
  const std::size_t n = runs.size();
  m.values.assign(n, std::vector<double>(n, 1.0));
  for (const auto& [name, verdicts] : runs) {
    m.names.push_back(name);
    if (verdicts.size() != runs.front().second.size()) {
      throw InvalidArgument("agreement_matrix: run \"" + name + "\" covers " +
                            std::to_string(verdicts.size()) + " records, expected " +
                            std::to_string(runs.front().second.size()));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values[i][j] = m.values[j][i] = cohens_kappa(runs[i].second, runs[j].second);
    }
  }
  return m;
}

namespace {

SubsetReport summarize(std::string name, const std::vector<const RecordEval*>& evals,
                       std::size_t missing) {
  SubsetReport s;
  s.name = std::move(name);
  s.counts.missing_predictions = missing;
  std::vector<RetrievalScores> claim, feature;
  std::vector<ClaimVerdict> predicted;
  std::vector<NoveltyLabel> labels;
  double nfi_p = 0.0, nfi_r = 0.0, nfi_f1 = 0.0;
  for (const RecordEval* e : evals) {
    ++s.counts.records;
    predicted.push_back(e->predicted);
    labels.push_back(e->label);
    if (e->claim_level) {
      ++s.counts.retrieval;
      claim.push_back(*e->claim_level);
    }
    if (e->feature_level) {
      feature.push_back(*e->feature_level);
      s.counts.retrieval_features += e->scored_features;
    }
    if (e->nfi) {
      ++s.counts.nfi;
      nfi_p += e->nfi->p;
      nfi_r += e->nfi->r;
      nfi_f1 += e->nfi->f1;
    }
  }
  s.claim_level = mean_scores(claim);
  s.feature_level = mean_scores(feature);
  if (s.counts.nfi > 0) {
    const double n = static_cast<double>(s.counts.nfi);
    s.nfi = {nfi_p / n, nfi_r / n, nfi_f1 / n};
  }
  if (!predicted.empty()) s.classification = eval_classification(predicted, labels);
  return s;
}

}  // namespace

EvalReport evaluate(const std::vector<ExaminationRecord>& records,
                    const std::map<std::string, PriorArtDocument, std::less<>>& docs,
                    const std::map<std::string, ExaminationResult, std::less<>>& results,
                    const std::set<std::string>& adversarial_ids,
                    const EvalOptions& options) {
  EvalReport report;
  std::vector<const ExaminationRecord*> ordered;
  for (const ExaminationRecord& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return record_id(*a) < record_id(*b);
  });

  std::size_t adversarial_missing = 0;
  for (const ExaminationRecord* record : ordered) {
    const std::string id = record_id(*record);
    auto found = results.find(id);
    if (found == results.end()) {
      report.missing_record_ids.push_back(id);
      adversarial_missing += adversarial_ids.contains(id) ? 1 : 0;
      continue;
    }
    const ExaminationResult& result = found->second;
    RecordEval e;
    e.record_id = id;
    e.label = record->novelty_label;
    e.predicted = result.claim_verdict;
    if (record->novelty_label == NoveltyLabel::kNotNovel) {
      auto doc = docs.find(record->prior_art_doc_id);
      if (doc == docs.end()) {
        throw InvalidArgument("record " + id + " cites unknown document " +
                              record->prior_art_doc_id);
      }
      e.claim_level = eval_retrieval_claim_level(result, *record, doc->second);
      FeatureLevelResult f =
          eval_retrieval_feature_level(result, *record, doc->second, options.retrieval);
      e.feature_level = f.mean;
      e.scored_features = f.per_feature.size();
    } else {
      e.nfi = eval_nfi(result, *record, options.novel_verdicts);
    }
    report.records.push_back(std::move(e));
  }

  std::vector<const RecordEval*> all, adversarial;
  for (const RecordEval& e : report.records) {
    all.push_back(&e);
    if (adversarial_ids.contains(e.record_id)) adversarial.push_back(&e);
  }
  report.full = summarize("test", all, report.missing_record_ids.size());
  if (!adversarial_ids.empty()) {
    report.adversarial = summarize("adversarial", adversarial, adversarial_missing);
  }
  return report;
}

}  // namespace novelty
