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

#include "novelty/embedding.h"

#include <algorithm>
#include <cmath>

#include "http_post.h"
#include "novelty/digest.h"
#include "novelty/errors.h"
#include "novelty/textsim.h"

namespace novelty {

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine_similarity: dimensions " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

HashingEmbeddingClient::HashingEmbeddingClient(std::size_t dimensions)
    : dimensions_(dimensions) {
  if (dimensions_ == 0) throw InvalidArgument("embedding dimensions must be >= 1");
}

std::vector<Embedding> HashingEmbeddingClient::embed(const std::vector<std::string>& texts) {
  calls_.fetch_add(1);
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    Embedding v(dimensions_, 0.0f);
    for (const std::string& token : tokenize(text)) {
      const std::uint64_t h = fnv1a64(token);
      v[h % dimensions_] += (h >> 63) ? -1.0f : 1.0f;
    }
    out.push_back(std::move(v));
  }
  return out;
}

HttpEmbeddingClient::HttpEmbeddingClient(HttpEmbeddingConfig config)
    : config_(std::move(config)) {
  if (config_.base_url.empty()) throw InvalidArgument("embedding endpoint url is empty");
}

std::vector<Embedding> HttpEmbeddingClient::embed(const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  nlohmann::json body = {{"input", texts}};
  if (!config_.model.empty()) body["model"] = config_.model;
  const nlohmann::json response = internal::post_json(
      {config_.base_url, config_.path, config_.api_key, config_.timeout}, body,
      config_.retry);

  std::vector<Embedding> out(texts.size());
  std::vector<bool> seen(texts.size(), false);
  try {
    const auto& data = response.at("data");
    if (data.size() != texts.size()) {
      throw DimensionError("embedding response has " + std::to_string(data.size()) +
                           " vectors for " + std::to_string(texts.size()) + " inputs");
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t index = data[i].contains("index") ? data[i].at("index").get<std::size_t>() : i;
      if (index >= texts.size() || seen[index]) {
        throw TransportError("embedding response has a bad index " + std::to_string(index));
      }
      seen[index] = true;
      out[index] = data[i].at("embedding").get<Embedding>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed embedding response: ") + e.what());
  }
  for (const Embedding& v : out) {
    if (v.size() != out.front().size()) {
      throw DimensionError("embedding response mixes vector dimensions");
    }
  }
  return out;
}

std::shared_ptr<const std::vector<Embedding>> EmbeddingCache::passages(
    const PriorArtDocument& doc, EmbeddingClient& client) {
  const std::size_t n = doc.passages.size();
  {
    std::shared_lock lock(mutex_);
    if (auto it = docs_.find(doc.doc_id); it != docs_.end()) {
      hits_.fetch_add(n);
      return it->second;
    }
  }
  std::unique_lock lock(mutex_);
  if (auto it = docs_.find(doc.doc_id); it != docs_.end()) {
    hits_.fetch_add(n);
    return it->second;
  }
  std::vector<std::string> texts;
  texts.reserve(n);
  for (const Passage& p : doc.passages) texts.push_back(p.text);
  auto vectors = std::make_shared<const std::vector<Embedding>>(client.embed(texts));
  if (vectors->size() != n) {
    throw DimensionError("embedding client returned " + std::to_string(vectors->size()) +
                         " vectors for " + std::to_string(n) + " passages");
  }
  fills_.fetch_add(1);
  misses_.fetch_add(n);
  docs_.emplace(doc.doc_id, vectors);
  return vectors;
}

}  // namespace novelty
