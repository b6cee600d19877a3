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

// Embedding clients and the per-document passage embedding cache.

#ifndef NOVELTY_EMBEDDING_H_
#define NOVELTY_EMBEDDING_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "novelty/retry.h"
#include "novelty/types.h"

namespace novelty {

using Embedding = std::vector<float>;

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per input text, in input order. Implementations must be safe
  // for concurrent calls.
  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) = 0;
};

// Cosine similarity; 0 if either vector is zero. Throws DimensionError on
// length mismatch.
double cosine_similarity(const Embedding& a, const Embedding& b);

// Deterministic offline client: hashes tokens of each text into a fixed
// number of buckets (signed feature hashing), so identical texts map to
// identical vectors and texts without shared tokens are orthogonal up to
// hash collisions.
class HashingEmbeddingClient : public EmbeddingClient {
 public:
  explicit HashingEmbeddingClient(std::size_t dimensions = 256);
  std::vector<Embedding> embed(const std::vector<std::string>& texts) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::size_t dimensions_;
  std::atomic<std::size_t> calls_{0};
};

struct HttpEmbeddingConfig {
  std::string base_url;  // e.g. "http://localhost:8000"
  std::string path = "/v1/embeddings";
  std::string model;
  std::string api_key;
  std::chrono::seconds timeout{60};
  RetryPolicy retry;
};

// Speaks the embeddings wire format:
//   POST {"model": ..., "input": [texts]}
//   <- {"data": [{"index": i, "embedding": [floats]}, ...]}
// Transport failures, 429 and 5xx are retried with exponential backoff.
class HttpEmbeddingClient : public EmbeddingClient {
 public:
  explicit HttpEmbeddingClient(HttpEmbeddingConfig config);
  std::vector<Embedding> embed(const std::vector<std::string>& texts) override;

 private:
  HttpEmbeddingConfig config_;
};

// Passage vectors per document, filled once under an exclusive lock and read
// concurrently afterwards.
class EmbeddingCache {
 public:
  // Returns the passage vectors of `doc`, embedding them on first use. Each
  // call counts one lookup per passage: misses on the filling call, hits
  // afterwards.
  std::shared_ptr<const std::vector<Embedding>> passages(const PriorArtDocument& doc,
                                                         EmbeddingClient& client);

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }
  std::size_t fills() const { return fills_.load(); }

 private:
  std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const std::vector<Embedding>>, std::less<>> docs_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
  std::atomic<std::size_t> fills_{0};
};

}  // namespace novelty

#endif  // NOVELTY_EMBEDDING_H_
