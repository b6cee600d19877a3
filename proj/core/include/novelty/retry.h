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

#ifndef NOVELTY_RETRY_H_
#define NOVELTY_RETRY_H_

#include <chrono>
#include <functional>

namespace novelty {

struct RetryPolicy {
  int max_retries = 4;
  std::chrono::milliseconds initial_delay{500};
  double backoff_factor = 2.0;
  std::chrono::milliseconds max_delay{16000};
};

// Delay before retry number `attempt` (0-based), capped at max_delay.
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt);

// HTTP statuses worth retrying: 0 (transport failure), 408, 429 and 5xx.
bool is_retryable_status(int status);

// Sleep hook used by the HTTP adapters; tests replace it to run instantly.
using SleepFn = std::function<void(std::chrono::milliseconds)>;
SleepFn& retry_sleep();

}  // namespace novelty

#endif  // NOVELTY_RETRY_H_
