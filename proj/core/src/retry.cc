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

#include "novelty/retry.h"

#include <algorithm>
#include <cmath>
#include <thread>

namespace novelty {

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int attempt) {
  const double scaled = static_cast<double>(policy.initial_delay.count()) *
                        std::pow(policy.backoff_factor, std::max(attempt, 0));
  const double capped = std::min(scaled, static_cast<double>(policy.max_delay.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(capped));
}

bool is_retryable_status(int status) {
  return status == 0 || status == 408 || status == 429 || (status >= 500 && status < 600);
}

SleepFn& retry_sleep() {
  static SleepFn fn = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  return fn;
}

}  // namespace novelty
