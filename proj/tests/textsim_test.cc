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

#include <gtest/gtest.h>

#include "novelty/errors.h"
#include "novelty/textsim.h"
#include "novelty/utf8.h"
#include "oracles.h"
#include "test_util.h"

namespace novelty {
namespace {

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(tokenize("The cat, sat."), (TokenSeq{"the", "cat", "sat"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("Fig. 2(a)"), (TokenSeq{"fig", "2", "a"}));
}

TEST(TokenizeTest, MatchesOracleOnRandomAscii) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    const std::string s = testutil::random_string(rng, rng() % 40, "aB3 ,.-_(x)Z\n");
    ASSERT_EQ(tokenize(s), oracle::tokenize(s)) << s;
  }
}

TEST(RougeTest, Examples) {
  EXPECT_DOUBLE_EQ(rouge_l("a b c", "a b c"), 1.0);
  EXPECT_NEAR(rouge_l("the cat sat", "the cat ran"), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(rouge_l("a b", "c d"), 0.0);
  EXPECT_DOUBLE_EQ(rouge_l("", "a"), 0.0);
}

TEST(RougeTest, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 400; ++t) {
    std::string a, b;
    for (std::size_t i = 0; i < rng() % 9; ++i) a += testutil::random_string(rng, 1, "abcd") + " ";
    for (std::size_t i = 0; i < rng() % 9; ++i) b += testutil::random_string(rng, 1, "abcd") + " ";
    ASSERT_NEAR(rouge_l(a, b), oracle::rouge_l(a, b), 1e-12);
    ASSERT_DOUBLE_EQ(rouge_l(a, b), rouge_l(b, a));
    const bool equal = !tokenize(a).empty() && tokenize(a) == tokenize(b);
    ASSERT_EQ(rouge_l(a, b) == 1.0, equal);
  }
}

TEST(LevenshteinTest, Examples) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(oracle::levenshtein(std::string("kitten"), std::string("sitting")), 3u);
  EXPECT_EQ(levenshtein("same", "same"), 0u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  // Scalars, not bytes.
  EXPECT_EQ(levenshtein("caf\xC3\xA9", "cafe"), 1u);
}

TEST(LevenshteinTest, MetricPropertiesOnRandomStrings) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto a = testutil::random_string(rng, rng() % 15, "abc");
    const auto b = testutil::random_string(rng, rng() % 15, "abc");
    const auto c = testutil::random_string(rng, rng() % 15, "abc");
    ASSERT_EQ(levenshtein(a, b), oracle::levenshtein(a, b));
    ASSERT_EQ(levenshtein(a, b), levenshtein(b, a));
    ASSERT_LE(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c));
  }
}

TEST(DiffTest, Examples) {
  EXPECT_EQ(diff_added_spans("abc", "abXc").ranges(), (std::vector<Span>{{2, 3}}));
  EXPECT_TRUE(diff_added_spans("same", "same").empty());
  const std::string old_text = "step A; step B";
  const std::string new_text = "step A; step A2; step B";
  const SpanSet spans = diff_added_spans(old_text, new_text);
  std::string kept;
  std::size_t next = 0;
  for (const Span& s : spans.ranges()) {
    kept += new_text.substr(next, s.start - next);
    next = s.end;
  }
  EXPECT_EQ(kept + new_text.substr(next), old_text);
  const auto counts = oracle::canonical_backtrace(old_text, new_text);
  EXPECT_EQ(spans.total_length(), counts.inserts + counts.substitutes);
  EXPECT_EQ(spans.total_length(), 9u);
}

TEST(DiffTest, CanonicalScriptMatchesOracleCounts) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const auto a = testutil::random_string(rng, rng() % 25, "abc");
    const auto b = testutil::random_string(rng, rng() % 25, "abc");
    const auto script = canonical_edit_script(utf8::decode(a), utf8::decode(b));
    oracle::ScriptCounts got;
    for (EditOp op : script) {
      got.matches += op == EditOp::kMatch;
      got.substitutes += op == EditOp::kSubstitute;
      got.deletes += op == EditOp::kDelete;
      got.inserts += op == EditOp::kInsert;
    }
    const auto want = oracle::canonical_backtrace(a, b);
    ASSERT_EQ(got.matches, want.matches);
    ASSERT_EQ(got.substitutes, want.substitutes);
    ASSERT_EQ(got.deletes, want.deletes);
    ASSERT_EQ(got.inserts, want.inserts);
    ASSERT_EQ(got.substitutes + got.deletes + got.inserts, oracle::levenshtein(a, b));
  }
}

TEST(TfidfTest, SingleDocument) {
  const auto vocab = tfidf_fit({"a b"});
  ASSERT_EQ(vocab.size(), 3u);
  EXPECT_GE(vocab.index_of("a"), 0);
  EXPECT_GE(vocab.index_of("b"), 0);
  EXPECT_GE(vocab.index_of("a b"), 0);
  for (double w : vocab.idf()) EXPECT_DOUBLE_EQ(w, std::log(2.0 / 2.0) + 1.0);
  EXPECT_THROW(tfidf_fit({}), InvalidArgument);
}

TEST(TfidfTest, CapBinds) {
  std::vector<std::string> corpus;
  for (int i = 0; i < 600; ++i) corpus.push_back("w" + std::to_string(i));
  EXPECT_EQ(tfidf_fit(corpus).size(), 500u);
}

TEST(TfidfTest, UbiquitousNgramHasMinimalIdf) {
  const auto vocab = tfidf_fit({"x a", "x b", "x c d", "x"});
  const double ix = vocab.idf()[static_cast<std::size_t>(vocab.index_of("x"))];
  for (double w : vocab.idf()) EXPECT_LE(ix, w);
  EXPECT_DOUBLE_EQ(ix, 1.0);
}

TEST(TfidfTest, Transform) {
  const TfidfVocabulary vocab({"a", "b"}, {1.0, 1.0}, 1);
  const auto v = tfidf_transform(vocab, "a a b");
  EXPECT_NEAR(v[0], 2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(v[1], 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(tfidf_transform(vocab, "zzz"), (std::vector<double>{0.0, 0.0}));
  const auto one = tfidf_transform(vocab, "b");
  EXPECT_EQ(one, (std::vector<double>{0.0, 1.0}));
}

TEST(TfidfTest, NormIsZeroOrOne) {
  std::mt19937_64 rng(6);
  std::vector<std::string> corpus;
  for (int i = 0; i < 30; ++i) corpus.push_back(testutil::random_string(rng, 30, "ab c d e"));
  const auto vocab = tfidf_fit(corpus);
  for (int t = 0; t < 200; ++t) {
    const auto v = tfidf_transform(vocab, testutil::random_string(rng, rng() % 20, "abcdfg "));
    double n = 0;
    for (double x : v) n += x * x;
    ASSERT_TRUE(n == 0.0 || std::abs(std::sqrt(n) - 1.0) < 1e-12);
  }
}

}  // namespace
}  // namespace novelty
