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

#include "novelty/baselines.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "novelty/claim_text.h"
#include "novelty/digest.h"
#include "novelty/errors.h"

namespace novelty {
namespace {

// Heuristic segmentation that tolerates blank claims.
Segmentation segment_or_empty(std::string_view claim_text) {
  if (claim_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  return segment_claim_heuristic(claim_text);
}

ExaminationResult empty_result(const ExaminationRecord& record) {
  ExaminationResult r;
  r.record_id = record_id(record);
  return r;
}

struct Scored {
  std::size_t passage;  // index into doc.passages (canonical order)
  double score;
};

// Passages scoring strictly above the threshold, best first; stable on the
// canonical document order for ties.
std::vector<PassageId> threshold_ranking(std::vector<Scored> scored, double threshold,
                                         const PriorArtDocument& doc) {
  std::erase_if(scored, [&](const Scored& s) { return !(s.score > threshold); });
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.score > b.score; });
  std::vector<PassageId> out;
  out.reserve(scored.size());
  for (const Scored& s : scored) out.push_back(doc.passages[s.passage].id);
  return out;
}

void finish_threshold_result(ExaminationResult& result) {
  bool any_undisclosed = false;
  for (FeatureOutcome& f : result.features) {
    f.verdict = f.ranked_passages.empty() ? FeatureVerdict::kNotDisclosed
                                          : FeatureVerdict::kFullyDisclosed;
    any_undisclosed |= f.verdict == FeatureVerdict::kNotDisclosed;
  }
  result.claim_verdict = any_undisclosed ? ClaimVerdict::kNovel : ClaimVerdict::kNotNovel;
}

}  // namespace

ExaminationResult random_examiner(const ExaminationRecord& record,
                                  const PriorArtDocument& doc, std::uint64_t seed,
                                  const RandomExaminerOptions& options) {
  ExaminationResult result = empty_result(record);
  const std::uint64_t h = fnv1a64(result.record_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> verdict3(0, 2);
  std::uniform_int_distribution<int> verdict2(0, 1);

  const double p = doc.passages.empty()
                       ? 0.0
                       : std::min(1.0, options.expected_passages /
                                           static_cast<double>(doc.passages.size()));
  static constexpr FeatureVerdict kVerdicts[] = {FeatureVerdict::kFullyDisclosed,
                                                 FeatureVerdict::kPartiallyDisclosed,
                                                 FeatureVerdict::kNotDisclosed};
  result.predicted_segmentation = segment_or_empty(record.claim_text);
  for (std::size_t i = 0; i < result.predicted_segmentation.size(); ++i) {
    FeatureOutcome f;
    for (const Passage& passage : doc.passages) {
      if (unit(rng) < p) f.ranked_passages.push_back(passage.id);
    }
    std::shuffle(f.ranked_passages.begin(), f.ranked_passages.end(), rng);
    f.verdict = kVerdicts[verdict3(rng)];
    result.features.push_back(std::move(f));
  }
  result.claim_verdict = verdict2(rng) == 1 ? ClaimVerdict::kNovel : ClaimVerdict::kNotNovel;
  return result;
}

ExaminationResult rouge_retrieval_examiner(const ExaminationRecord& record,
                                           const PriorArtDocument& doc, double threshold) {
  ExaminationResult result = empty_result(record);
  result.predicted_segmentation = segment_or_empty(record.claim_text);
  std::vector<TokenSeq> passage_tokens;
  passage_tokens.reserve(doc.passages.size());
  for (const Passage& p : doc.passages) passage_tokens.push_back(tokenize(p.text));

  for (const Feature& feature : result.predicted_segmentation.features) {
    const TokenSeq tokens = tokenize(feature.text);
    std::vector<Scored> scored;
    for (std::size_t j = 0; j < passage_tokens.size(); ++j) {
      scored.push_back({j, rouge_l(tokens, passage_tokens[j])});
    }
    FeatureOutcome f;
    f.ranked_passages = threshold_ranking(std::move(scored), threshold, doc);
    result.features.push_back(std::move(f));
  }
  finish_threshold_result(result);
  return result;
}

ExaminationResult embedding_retrieval_examiner(const ExaminationRecord& record,
                                               const PriorArtDocument& doc,
                                               EmbeddingClient& client,
                                               EmbeddingCache& cache, double threshold) {
  ExaminationResult result = empty_result(record);
  result.predicted_segmentation = segment_or_empty(record.claim_text);
  const auto& features = result.predicted_segmentation.features;
  if (!features.empty()) {
    std::vector<std::string> texts;
    for (const Feature& f : features) texts.push_back(f.text);
    const std::vector<Embedding> feature_vectors = client.embed(texts);
    if (feature_vectors.size() != features.size()) {
      throw DimensionError("embedding client returned " +
                           std::to_string(feature_vectors.size()) + " vectors for " +
                           std::to_string(features.size()) + " features");
    }
    for (const Embedding& fv : feature_vectors) {
      const auto passages = cache.passages(doc, client);
      std::vector<Scored> scored;
      for (std::size_t j = 0; j < passages->size(); ++j) {
        scored.push_back({j, cosine_similarity(fv, (*passages)[j])});
      }
      FeatureOutcome f;
      f.ranked_passages = threshold_ranking(std::move(scored), threshold, doc);
      result.features.push_back(std::move(f));
    }
  }
  finish_threshold_result(result);
  return result;
}

// --- Claim-only features ----------------------------------------------------

FeatureSpace::FeatureSpace(std::vector<std::string> domain_classes, TfidfVocabulary vocab)
    : domain_classes_(std::move(domain_classes)), vocab_(std::move(vocab)) {}

FeatureSpace FeatureSpace::Fit(const std::vector<ExaminationRecord>& training,
                               const FeatureSpaceOptions& options) {
  if (training.empty()) throw InvalidArgument("cannot fit a feature space on no records");
  std::map<std::string, std::size_t> frequency;
  std::vector<std::string> texts;
  texts.reserve(training.size());
  for (const ExaminationRecord& r : training) {
    texts.push_back(r.claim_text);
    for (const std::string& c : std::set<std::string>(r.domain_classes.begin(),
                                                      r.domain_classes.end())) {
      ++frequency[c];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(frequency.begin(), frequency.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > options.top_domain_classes) ranked.resize(options.top_domain_classes);
  std::vector<std::string> classes;
  for (auto& [name, count] : ranked) classes.push_back(name);
  return FeatureSpace(std::move(classes), tfidf_fit(texts, options.tfidf));
}

std::size_t FeatureSpace::dimensions() const {
  return kScalarClaimFeatures + domain_classes_.size() + vocab_.size();
}

std::vector<std::string> FeatureSpace::feature_names() const {
  std::vector<std::string> names = {"word_count",      "feature_count",   "punct_comma",
                                    "punct_semicolon", "punct_colon",     "punct_period",
                                    "punct_parenthesis"};
  for (const std::string& c : domain_classes_) names.push_back("class=" + c);
  for (const std::string& g : vocab_.ngrams()) names.push_back("tfidf=" + g);
  return names;
}

ClaimFeatureVector extract_claim_features(std::string_view claim_text,
                                          const std::vector<std::string>& domain_classes,
                                          const FeatureSpace& space) {
  ClaimFeatureVector v;
  v.values.reserve(space.dimensions());
  v.values.push_back(static_cast<double>(tokenize(claim_text).size()));
  v.values.push_back(static_cast<double>(segment_or_empty(claim_text).size()));
  auto count = [&](std::string_view chars) {
    std::size_t n = 0;
    for (char c : claim_text) n += chars.find(c) != std::string_view::npos ? 1 : 0;
    return static_cast<double>(n);
  };
  v.values.push_back(count(","));
  v.values.push_back(count(";"));
  v.values.push_back(count(":"));
  v.values.push_back(count("."));
  v.values.push_back(count("()"));
  for (const std::string& c : space.domain_classes()) {
    const bool present =
        std::find(domain_classes.begin(), domain_classes.end(), c) != domain_classes.end();
    v.values.push_back(present ? 1.0 : 0.0);
  }
  const std::vector<double> tfidf = tfidf_transform(space.vocabulary(), claim_text);
  v.values.insert(v.values.end(), tfidf.begin(), tfidf.end());
  return v;
}

// --- Logistic regression ----------------------------------------------------

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

LogRegModel train_logreg(const std::vector<ClaimFeatureVector>& vectors,
                         const std::vector<NoveltyLabel>& labels,
                         const LogRegOptions& options) {
  if (vectors.size() != labels.size()) {
    throw InvalidArgument("train_logreg: " + std::to_string(vectors.size()) +
                          " vectors for " + std::to_string(labels.size()) + " labels");
  }
  if (vectors.size() < 2) throw InvalidArgument("train_logreg: need at least two examples");
  const auto novel = std::count(labels.begin(), labels.end(), NoveltyLabel::kNovel);
  if (novel == 0 || novel == static_cast<long>(labels.size())) {
    throw InvalidArgument("train_logreg: training labels contain a single class");
  }
  const std::size_t n = vectors.size();
  const std::size_t d = vectors.front().values.size();
  for (const ClaimFeatureVector& v : vectors) {
    if (v.values.size() != d) throw DimensionError("train_logreg: ragged feature vectors");
  }

  LogRegModel model;
  model.options = options;
  model.mean.assign(d, 0.0);
  model.stddev.assign(d, 0.0);
  for (const ClaimFeatureVector& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += v.values[j];
  }
  for (double& m : model.mean) m /= static_cast<double>(n);
  for (const ClaimFeatureVector& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = v.values[j] - model.mean[j];
      model.stddev[j] += c * c;
    }
  }
  for (double& s : model.stddev) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 1e-12)) s = 1.0;
  }

  // Standardized design matrix, row-major.
  std::vector<double> x(n * d);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      x[i * d + j] = (vectors[i].values[j] - model.mean[j]) / model.stddev[j];
    }
    y[i] = labels[i] == NoveltyLabel::kNovel ? 1.0 : 0.0;
  }

  model.weights.assign(d, 0.0);
  std::vector<double> grad(d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int it = 0; it < options.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = &x[i * d];
      double z = model.bias;
      for (std::size_t j = 0; j < d; ++j) z += model.weights[j] * row[j];
      const double err = sigmoid(z) - y[i];
      grad_b += err;
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
    }
    for (std::size_t j = 0; j < d; ++j) {
      const double g = grad[j] * inv_n + options.l2 * inv_n * model.weights[j];
      model.weights[j] -= options.learning_rate * g;
    }
    model.bias -= options.learning_rate * grad_b * inv_n;
  }
  return model;
}

LogRegPrediction predict_logreg(const LogRegModel& model, const ClaimFeatureVector& vector) {
  if (vector.values.size() != model.dimensions()) {
    throw DimensionError("predict_logreg: vector has " +
                         std::to_string(vector.values.size()) + " entries, model expects " +
                         std::to_string(model.dimensions()));
  }
  double z = model.bias;
  for (std::size_t j = 0; j < model.dimensions(); ++j) {
    z += model.weights[j] * (vector.values[j] - model.mean[j]) / model.stddev[j];
  }
  LogRegPrediction p;
  p.probability = sigmoid(z);
  p.verdict = p.probability > 0.5 ? ClaimVerdict::kNovel : ClaimVerdict::kNotNovel;
  return p;
}

LogRegModel train_claim_classifier(const std::vector<ExaminationRecord>& training,
                                   const FeatureSpaceOptions& space_options,
                                   const LogRegOptions& options) {
  FeatureSpace space = FeatureSpace::Fit(training, space_options);
  std::vector<ClaimFeatureVector> vectors;
  std::vector<NoveltyLabel> labels;
  vectors.reserve(training.size());
  for (const ExaminationRecord& r : training) {
    vectors.push_back(extract_claim_features(r.claim_text, r.domain_classes, space));
    labels.push_back(r.novelty_label);
  }
  LogRegModel model = train_logreg(vectors, labels, options);
  model.space = std::move(space);
  return model;
}

LogRegPrediction predict_claim(const LogRegModel& model, const ExaminationRecord& record) {
  return predict_logreg(model,
                        extract_claim_features(record.claim_text, record.domain_classes,
                                               model.space));
}

ExaminationResult logreg_examiner(const ExaminationRecord& record, const LogRegModel& model) {
  ExaminationResult result = empty_result(record);
  result.claim_verdict = predict_claim(model, record).verdict;
  return result;
}

std::vector<std::pair<std::string, double>> top_coefficients(const LogRegModel& model,
                                                             std::size_t k) {
  std::vector<std::string> names = model.space.feature_names();
  if (names.size() != model.dimensions()) {
    names.clear();
    for (std::size_t j = 0; j < model.dimensions(); ++j) names.push_back("x" + std::to_string(j));
  }
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t j = 0; j < model.dimensions(); ++j) out.emplace_back(names[j], model.weights[j]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const double wa = std::abs(a.second), wb = std::abs(b.second);
    if (wa != wb) return wa > wb;
    return a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace novelty
