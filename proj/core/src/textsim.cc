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

#include "novelty/textsim.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "novelty/errors.h"
#include "novelty/utf8.h"

namespace novelty {
namespace {

bool is_word_char(char32_t c) {
  if (c < 0x80) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  if (c < 0xC0 || c == 0xD7 || c == 0xF7) return false;  // Latin-1 symbols
  if (c >= 0x2000 && c < 0x2C00) return false;  // punctuation, symbols, arrows
  if (c >= 0x3000 && c < 0x3040) return false;  // CJK punctuation
  if (c >= 0xFE30 && c < 0xFE50) return false;
  if (c >= 0xFF00 && c < 0xFF10) return false;  // fullwidth punctuation
  if (c >= 0xFF1A && c < 0xFF21) return false;
  if (c >= 0xFFF0) return c > 0xFFFF;
  return true;
}

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::u32string current;
  for (char32_t c : utf8::decode(text)) {
    if (is_word_char(c)) {
      current.push_back(to_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(utf8::encode(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(utf8::encode(current));
  return tokens;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double rouge_l(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double lcs = static_cast<double>(lcs_length(a, b));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(a.size());
  const double r = lcs / static_cast<double>(b.size());
  return 2.0 * p * r / (p + r);
}

double rouge_l(std::string_view a, std::string_view b) {
  return rouge_l(tokenize(a), tokenize(b));
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + cost});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(a), utf8::decode(b));
}

std::vector<EditOp> canonical_edit_script(std::u32string_view old_text,
                                          std::u32string_view new_text) {
  const std::size_t n = old_text.size();
  const std::size_t m = new_text.size();
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> dp((n + 1) * width);
  const auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return dp[i * width + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t cost = old_text[i - 1] == new_text[j - 1] ? 0 : 1;
      at(i, j) = std::min({at(i - 1, j) + 1, at(i, j - 1) + 1, at(i - 1, j - 1) + cost});
    }
  }

  std::vector<EditOp> script;
  script.reserve(std::max(n, m));
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0 && old_text[i - 1] == new_text[j - 1] && here == at(i - 1, j - 1)) {
      script.push_back(EditOp::kMatch);
      --i, --j;
    } else if (i > 0 && j > 0 && here == at(i - 1, j - 1) + 1) {
      script.push_back(EditOp::kSubstitute);
      --i, --j;
    } else if (i > 0 && here == at(i - 1, j) + 1) {
      script.push_back(EditOp::kDelete);
      --i;
    } else {
      script.push_back(EditOp::kInsert);
      --j;
    }
  }
  std::reverse(script.begin(), script.end());
  return script;
}

SpanSet diff_added_spans(std::u32string_view old_text, std::u32string_view new_text) {
  std::vector<Span> added;
  std::size_t j = 0;
  for (EditOp op : canonical_edit_script(old_text, new_text)) {
    switch (op) {
      case EditOp::kMatch:
        ++j;
        break;
      case EditOp::kSubstitute:
      case EditOp::kInsert:
        if (!added.empty() && added.back().end == j) {
          ++added.back().end;
        } else {
          added.push_back({j, j + 1});
        }
        ++j;
        break;
      case EditOp::kDelete:
        break;
    }
  }
  return SpanSet::FromUnsorted(std::move(added));
}

SpanSet diff_added_spans(std::string_view old_text, std::string_view new_text) {
  return diff_added_spans(utf8::decode(old_text), utf8::decode(new_text));
}

TfidfVocabulary::TfidfVocabulary(std::vector<std::string> ngrams, std::vector<double> idf,
                                 std::size_t max_ngram)
    : ngrams_(std::move(ngrams)), idf_(std::move(idf)), max_ngram_(max_ngram) {
  if (ngrams_.size() != idf_.size()) {
    throw InvalidArgument("vocabulary has " + std::to_string(ngrams_.size()) +
                          " n-grams but " + std::to_string(idf_.size()) + " idf weights");
  }
  for (std::size_t i = 0; i < ngrams_.size(); ++i) {
    if (!index_.emplace(ngrams_[i], i).second) {
      throw InvalidArgument("duplicate n-gram \"" + ngrams_[i] + "\" in vocabulary");
    }
  }
}

long TfidfVocabulary::index_of(const std::string& ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::vector<std::string> word_ngrams(const TokenSeq& tokens, std::size_t max_n) {
  std::vector<std::string> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (tokens.size() < n) break;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        gram += ' ';
        gram += tokens[i + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

TfidfVocabulary tfidf_fit(const std::vector<std::string>& corpus,
                          const TfidfOptions& options) {
  if (corpus.empty()) throw InvalidArgument("tfidf_fit: empty corpus");
  std::unordered_map<std::string, std::size_t> df;
  for (const std::string& doc : corpus) {
    std::vector<std::string> grams = word_ngrams(tokenize(doc), options.max_ngram);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (std::string& g : grams) ++df[std::move(g)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  const auto better = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t keep = std::min(options.max_features, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<long>(keep), ranked.end(),
                    better);
  ranked.resize(keep);

  const double n_docs = static_cast<double>(corpus.size());
  std::vector<std::string> ngrams;
  std::vector<double> idf;
  for (auto& [gram, count] : ranked) {
    ngrams.push_back(std::move(gram));
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return TfidfVocabulary(std::move(ngrams), std::move(idf), options.max_ngram);
}

std::vector<double> tfidf_transform(const TfidfVocabulary& vocab, std::string_view text) {
  std::vector<double> out(vocab.size(), 0.0);
  for (const std::string& gram : word_ngrams(tokenize(text), vocab.max_ngram())) {
    const long idx = vocab.index_of(gram);
    if (idx >= 0) out[static_cast<std::size_t>(idx)] += 1.0;
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= vocab.idf()[i];
    norm += out[i] * out[i];
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& v : out) v /= norm;
  }
  return out;
}

}  // namespace novelty
