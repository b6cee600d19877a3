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

// JSON-over-HTTP POST with retries, shared by the chat and embedding
// adapters. Internal to the core library.

#ifndef NOVELTY_SRC_HTTP_POST_H_
#define NOVELTY_SRC_HTTP_POST_H_

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "novelty/retry.h"

namespace novelty::internal {

struct HttpTarget {
  std::string base_url;
  std::string path;
  std::string api_key;
  std::chrono::seconds timeout{60};
};

// Returns the parsed response body of the first 2xx reply. Retryable
// failures back off per `retry`; anything else throws TransportError.
nlohmann::json post_json(const HttpTarget& target, const nlohmann::json& body,
                         const RetryPolicy& retry);

}  // namespace novelty::internal

#endif  // NOVELTY_SRC_HTTP_POST_H_
