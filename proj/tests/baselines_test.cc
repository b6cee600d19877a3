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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "novelty/baselines.h"
#include "novelty/embedding.h"
#include "novelty/errors.h"
#include "novelty/metrics.h"
#include "novelty/model_io.h"
#include "novelty/record_io.h"
#include "novelty/synthetic.h"
#include "test_util.h"

namespace novelty {
namespace {

using testutil::make_doc;
using testutil::par;

ExaminationRecord claim_record(const std::string& claim) {
  ExaminationRecord r;
  r.application_id = "APP";
  r.claim_text = claim;
  r.prior_art_doc_id = "D";
  return r;
}

TEST(RandomExaminerTest, DeterministicAndChanceLevel) {
  const auto doc = make_doc("D", {"p one", "p two", "p three", "p four"});
  const auto r = claim_record("A tool comprising: a; b; c.");
  EXPECT_EQ(random_examiner(r, doc, 5), random_examiner(r, doc, 5));
  std::size_t novel = 0;
  const std::size_t n = 10000;
  std::size_t retrieved = 0, features = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto rec = r;
    rec.application_id = "APP" + std::to_string(i);
    const auto res = random_examiner(rec, doc, 1);
    novel += res.claim_verdict == ClaimVerdict::kNovel;
    for (const auto& f : res.features) retrieved += f.ranked_passages.size(), ++features;
    for (const auto& f : res.features) {
      ASSERT_EQ(std::set<PassageId>(f.ranked_passages.begin(), f.ranked_passages.end()).size(),
                f.ranked_passages.size());
    }
  }
  EXPECT_NEAR(static_cast<double>(novel) / n, 0.5, 0.02);
  EXPECT_NEAR(static_cast<double>(retrieved) / features, 2.0, 0.05);
}

TEST(RougeExaminerTest, VerbatimCopyRetrievedFirst) {
  const auto doc = make_doc("D", {"unrelated words here", "a lever pivots on a pin",
                                  "a lever pivots on a shaft near a pin"});
  const auto res = rouge_retrieval_examiner(claim_record("a lever pivots on a pin"), doc);
  ASSERT_EQ(res.features.size(), 1u);
  ASSERT_FALSE(res.features[0].ranked_passages.empty());
  EXPECT_EQ(res.features[0].ranked_passages[0], par(2));
  EXPECT_EQ(res.features[0].verdict, FeatureVerdict::kFullyDisclosed);
  EXPECT_EQ(res.claim_verdict, ClaimVerdict::kNotNovel);
}

TEST(RougeExaminerTest, NoSharedTokensMeansNovel) {
  const auto doc = make_doc("D", {"zeta eta theta"}, "iota kappa");
  const auto res = rouge_retrieval_examiner(claim_record("alpha; beta gamma"), doc);
  for (const auto& f : res.features) {
    EXPECT_TRUE(f.ranked_passages.empty());
    EXPECT_EQ(f.verdict, FeatureVerdict::kNotDisclosed);
  }
  EXPECT_EQ(res.claim_verdict, ClaimVerdict::kNovel);
}

TEST(RougeExaminerTest, ClaimVerdictIsBooleanAggregation) {
  const auto corpus = generate_synthetic_corpus(4, 40);
  const auto docs = index_documents(corpus.documents);
  for (const auto& r : corpus.records) {
    const auto res = rouge_retrieval_examiner(r, docs.at(r.prior_art_doc_id));
    bool any_nd = false;
    for (const auto& f : res.features) {
      any_nd |= f.verdict == FeatureVerdict::kNotDisclosed;
      EXPECT_NE(f.verdict, FeatureVerdict::kPartiallyDisclosed);
    }
    EXPECT_EQ(res.claim_verdict == ClaimVerdict::kNovel, any_nd);
  }
}

TEST(RougeExaminerTest, RecallBeatsRandomOnPlantedParaphrases) {
  const auto corpus = generate_synthetic_corpus(6, 60);
  const auto docs = index_documents(corpus.documents);
  double rouge_r = 0, random_r = 0;
  int n = 0;
  for (const auto& r : corpus.records) {
    if (r.novelty_label != NoveltyLabel::kNotNovel) continue;
    const auto& doc = docs.at(r.prior_art_doc_id);
    rouge_r += eval_retrieval_feature_level(rouge_retrieval_examiner(r, doc), r, doc).mean->r;
    random_r += eval_retrieval_feature_level(random_examiner(r, doc, 1), r, doc).mean->r;
    ++n;
  }
  EXPECT_GE(rouge_r / n, random_r / n);
  EXPECT_GT(rouge_r / n, 0.8);
}

// Passages map to e2, everything else to e1.
class OrthogonalClient : public EmbeddingClient {
 public:
  explicit OrthogonalClient(std::set<std::string> passages) : passages_(std::move(passages)) {}
  std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
    std::vector<Embedding> out;
    for (const auto& t : texts) {
      out.push_back(passages_.contains(t) ? Embedding{0.f, 1.f} : Embedding{1.f, 0.f});
    }
    return out;
  }

 private:
  std::set<std::string> passages_;
};

TEST(EmbeddingExaminerTest, IdenticalTextsRetrieved) {
  const auto doc = make_doc("D", {"gear train", "a lever pivots on a pin"});
  HashingEmbeddingClient client;
  EmbeddingCache cache;
  const auto res = embedding_retrieval_examiner(claim_record("a lever pivots on a pin"), doc,
                                                client, cache);
  ASSERT_FALSE(res.features[0].ranked_passages.empty());
  EXPECT_EQ(res.features[0].ranked_passages[0], par(2));
}

TEST(EmbeddingExaminerTest, OrthogonalMeansNothingRetrieved) {
  const auto doc = make_doc("D", {"gear train assembly", "a lever arm"});
  std::set<std::string> texts;
  for (const auto& p : doc.passages) texts.insert(p.text);
  OrthogonalClient client(texts);
  EmbeddingCache cache;
  const auto res =
      embedding_retrieval_examiner(claim_record("a lever; a gear train"), doc, client, cache);
  for (const auto& f : res.features) EXPECT_TRUE(f.ranked_passages.empty());
  EXPECT_EQ(res.claim_verdict, ClaimVerdict::kNovel);
}

TEST(EmbeddingExaminerTest, PassagesEmbeddedOncePerDocument) {
  const auto doc = make_doc("D", {"one", "two", "three"});
  HashingEmbeddingClient client;
  EmbeddingCache cache;
  const auto r = claim_record("a; b; c; d");
  embedding_retrieval_examiner(r, doc, client, cache);
  const std::size_t passages = doc.passages.size();
  EXPECT_EQ(cache.fills(), 1u);
  EXPECT_EQ(cache.misses(), passages);
  EXPECT_EQ(cache.hits(), (4 - 1) * passages);
}

TEST(CosineTest, Basics) {
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 0}, {0, 1}), 0.0);
  EXPECT_NEAR(cosine_similarity({1, 2}, {2, 4}), 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(cosine_similarity({0, 0}, {1, 1}), 0.0);
  EXPECT_THROW(cosine_similarity({1}, {1, 2}), DimensionError);
}

TEST(ClaimFeaturesTest, Counts) {
  const FeatureSpace space({"G06F"}, TfidfVocabulary());
  const auto v = extract_claim_features("a; b", {}, space);
  ASSERT_EQ(v.values.size(), space.dimensions());
  const auto names = space.feature_names();
  EXPECT_EQ(names[0], "word_count");
  EXPECT_EQ(names[1], "feature_count");
  EXPECT_EQ(v.values[0], 2.0);
  EXPECT_EQ(v.values[1], 2.0);
  EXPECT_EQ(names[kScalarClaimFeatures], "class=G06F");
  EXPECT_EQ(v.values[kScalarClaimFeatures], 0.0);
  EXPECT_EQ(extract_claim_features("a", {"G06F"}, space).values[kScalarClaimFeatures], 1.0);
  const auto w = extract_claim_features("step one; step two; wherein X", {}, space);
  const auto semi = std::find(names.begin(), names.end(), "punct_semicolon") - names.begin();
  EXPECT_EQ(w.values[static_cast<std::size_t>(semi)], 2.0);
}

TEST(LogRegTest, SeparableToySet) {
  std::vector<ClaimFeatureVector> x;
  std::vector<NoveltyLabel> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back({{static_cast<double>(i), 0.0}});
    y.push_back(i >= 10 ? NoveltyLabel::kNovel : NoveltyLabel::kNotNovel);
  }
  const auto model = train_logreg(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(predict_logreg(model, x[i]).verdict, y[i]);
  // The all-zero column carries no signal.
  EXPECT_LT(std::abs(model.weights[1]), 1e-6);
  EXPECT_THROW(predict_logreg(model, {{1.0}}), DimensionError);
  EXPECT_THROW(train_logreg({x[0]}, {y[0]}), InvalidArgument);
  EXPECT_THROW(train_logreg({x[0], x[1]}, {y[0], y[1]}), InvalidArgument);
}

TEST(LogRegTest, ZeroModelTiesToNotNovel) {
  LogRegModel m;
  m.weights = {0.0, 0.0};
  m.mean = {0.0, 0.0};
  m.stddev = {1.0, 1.0};
  const auto p = predict_logreg(m, {{3.0, -2.0}});
  EXPECT_DOUBLE_EQ(p.probability, 0.5);
  EXPECT_EQ(p.verdict, ClaimVerdict::kNotNovel);
}

TEST(LogRegTest, ScaleConsistent) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<ClaimFeatureVector> x, scaled;
  std::vector<NoveltyLabel> y;
  for (int i = 0; i < 60; ++i) {
    const double a = g(rng), b = g(rng);
    x.push_back({{a, b}});
    scaled.push_back({{a * 37.0, b * 37.0}});
    y.push_back(a + 0.5 * b + 0.3 * g(rng) > 0 ? NoveltyLabel::kNovel : NoveltyLabel::kNotNovel);
  }
  const auto m1 = train_logreg(x, y);
  const auto m2 = train_logreg(scaled, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(predict_logreg(m1, x[i]).verdict, predict_logreg(m2, scaled[i]).verdict);
  }
}

class SkewedClassifier : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SynthOptions opt;
    opt.length_skew = true;
    corpus_ = new SyntheticCorpus(generate_synthetic_corpus(31, 300, opt));
    LogRegOptions lo;
    lo.iterations = 200;
    model_ = new LogRegModel(train_claim_classifier(corpus_->records, {}, lo));
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete model_;
  }
  static SyntheticCorpus* corpus_;
  static LogRegModel* model_;
};
SyntheticCorpus* SkewedClassifier::corpus_ = nullptr;
LogRegModel* SkewedClassifier::model_ = nullptr;

TEST_F(SkewedClassifier, LengthSignalRanksFirstAndIsMonotone) {
  const auto top = top_coefficients(*model_, 3);
  ASSERT_EQ(top.size(), 3u);
  const std::set<std::string> length_names = {"word_count", "feature_count", "punct_semicolon"};
  EXPECT_TRUE(length_names.contains(top[0].first)) << top[0].first;
  EXPECT_TRUE(top_coefficients(*model_, 0).empty());
  EXPECT_EQ(top_coefficients(*model_, 100000).size(), model_->dimensions());
  // Longer claims built from the same feature look more novel.
  const std::string f = " a small lever attached to the frame;";
  double last = -1;
  for (int n = 1; n <= 20; ++n) {
    std::string claim = "A device comprising:";
    for (int i = 0; i < n; ++i) claim += f;
    ExaminationRecord r = claim_record(claim);
    const double p = predict_claim(*model_, r).probability;
    EXPECT_GE(p, last);
    last = p;
  }
}

TEST_F(SkewedClassifier, SerializationPreservesPredictions) {
  testutil::TempDir dir;
  save_model(dir.path() / "m.json", *model_);
  const auto back = load_model(dir.path() / "m.json");
  EXPECT_EQ(back.space.feature_names(), model_->space.feature_names());
  for (const auto& r : corpus_->records) {
    const auto a = predict_claim(*model_, r);
    const auto b = predict_claim(back, r);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_DOUBLE_EQ(a.probability, b.probability);
  }
  const auto res = logreg_examiner(corpus_->records[0], back);
  EXPECT_TRUE(res.predicted_segmentation.empty());
  EXPECT_EQ(res.claim_verdict, predict_claim(back, corpus_->records[0]).verdict);
}

}  // namespace
}  // namespace novelty
