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

#include "http_post.h"

#include <httplib.h>

#include "novelty/errors.h"

namespace novelty::internal {

nlohmann::json post_json(const HttpTarget& target, const nlohmann::json& body,
                         const RetryPolicy& retry) {
  httplib::Client client(target.base_url);
  if (!client.is_valid()) {
    throw TransportError("invalid endpoint url: " + target.base_url);
  }
  client.set_connection_timeout(target.timeout);
  client.set_read_timeout(target.timeout);
  client.set_write_timeout(target.timeout);
  httplib::Headers headers;
  if (!target.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + target.api_key);
  }
  const std::string payload = body.dump();

  for (int attempt = 0;; ++attempt) {
    int status = 0;
    std::string detail;
    if (auto res = client.Post(target.path, headers, payload, "application/json")) {
      status = res->status;
      if (status >= 200 && status < 300) {
        try {
          return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
          throw TransportError("malformed JSON from " + target.base_url + target.path +
                                   ": " + e.what(),
                               status);
        }
      }
      detail = "HTTP " + std::to_string(status) + ": " + res->body.substr(0, 200);
    } else {
      detail = httplib::to_string(res.error());
    }
    if (!is_retryable_status(status) || attempt >= retry.max_retries) {
      throw TransportError("POST " + target.base_url + target.path + " failed after " +
                               std::to_string(attempt + 1) + " attempt(s): " + detail,
                           status);
    }
    retry_sleep()(backoff_delay(retry, attempt));
  }
}

}  // namespace novelty::internal
