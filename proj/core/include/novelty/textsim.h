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

// Deterministic text algorithms: tokenization, ROUGE-L, Levenshtein
// distance, character diffs and TF-IDF.

#ifndef NOVELTY_TEXTSIM_H_
#define NOVELTY_TEXTSIM_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "novelty/types.h"

namespace novelty {

using TokenSeq = std::vector<std::string>;

// Lowercases ASCII letters and splits on maximal runs of characters that are
// neither ASCII alphanumerics nor non-ASCII scalars (so accented words stay
// whole). Empty tokens are never produced.
TokenSeq tokenize(std::string_view text);

// Token-level longest common subsequence length.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// ROUGE-L F-measure (beta = 1) over tokenize() output; 0 when either side has
// no tokens.
double rouge_l(std::string_view a, std::string_view b);
double rouge_l(const TokenSeq& a, const TokenSeq& b);

// Unit-cost edit distance over Unicode scalars.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Ranges of `new_text` that are inserted or substituted in the canonical
// minimal edit script turning `old_text` into `new_text`.
//
// The script is recovered by backtracking the full DP table from the bottom
// right, preferring at each cell: match, substitution, deletion, insertion.
SpanSet diff_added_spans(std::string_view old_text, std::string_view new_text);
SpanSet diff_added_spans(std::u32string_view old_text, std::u32string_view new_text);

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

// The canonical script itself, in forward order.
std::vector<EditOp> canonical_edit_script(std::u32string_view old_text,
                                          std::u32string_view new_text);

struct TfidfOptions {
  std::size_t max_features = 500;
  std::size_t max_ngram = 4;
};

class TfidfVocabulary {
 public:
  TfidfVocabulary() = default;
  TfidfVocabulary(std::vector<std::string> ngrams, std::vector<double> idf,
                  std::size_t max_ngram);

  const std::vector<std::string>& ngrams() const { return ngrams_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t size() const { return ngrams_.size(); }
  std::size_t max_ngram() const { return max_ngram_; }
  // -1 when absent.
  long index_of(const std::string& ngram) const;

 private:
  std::vector<std::string> ngrams_;
  std::vector<double> idf_;
  std::size_t max_ngram_ = 4;
  std::unordered_map<std::string, std::size_t> index_;
};

// Space-joined word n-grams of orders 1..max_n, in text order.
std::vector<std::string> word_ngrams(const TokenSeq& tokens, std::size_t max_n);

// Keeps the max_features n-grams with the highest document frequency (ties
// broken lexicographically); idf = ln((1 + N) / (1 + df)) + 1.
// Throws InvalidArgument for an empty corpus.
TfidfVocabulary tfidf_fit(const std::vector<std::string>& corpus,
                          const TfidfOptions& options = {});

// Raw counts times idf, then L2-normalized. Zero vector stays zero.
std::vector<double> tfidf_transform(const TfidfVocabulary& vocab,
                                    std::string_view text);

}  // namespace novelty

#endif  // NOVELTY_TEXTSIM_H_
