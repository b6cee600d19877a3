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

// Chat-model client interface and its adapters: an HTTP chat-completions
// client, a fixture replay client for offline runs, and a recorder that
// produces such fixtures.

#ifndef NOVELTY_LLM_CLIENT_H_
#define NOVELTY_LLM_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty/retry.h"

namespace novelty::llm {

using Json = nlohmann::json;

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct Usage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
};

struct CompletionRequest {
  std::string step;  // "single_step", "segment", "feature", "aggregate"
  std::vector<ChatMessage> messages;
  std::string schema_name;
  Json output_schema;
  double temperature = 0.0;
  std::uint64_t seed = 0;
};

struct CompletionResponse {
  // Parsed structured output; null when the model did not return JSON.
  Json value;
  std::string raw;
  Usage usage;
};

class ExaminerClient {
 public:
  virtual ~ExaminerClient() = default;
  // Must be safe for concurrent calls. Throws TransportError when the
  // endpoint cannot be reached after retries.
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

// SHA-256 over the canonical JSON of messages, schema, temperature and seed.
// The `step` label is not part of the digest.
std::string request_digest(const CompletionRequest& request);

// Adapts a callable; used by tests to script responses.
class CallbackClient : public ExaminerClient {
 public:
  using Handler = std::function<CompletionResponse(const CompletionRequest&)>;
  explicit CallbackClient(Handler handler) : handler_(std::move(handler)) {}
  CompletionResponse complete(const CompletionRequest& request) override {
    return handler_(request);
  }

 private:
  Handler handler_;
};

// Replays responses keyed by request digest. Fixture lines:
//   {"digest": "...", "response": <json or string>,
//    "usage": {"prompt_tokens": n, "completion_tokens": m}}
// A request without a fixture raises TransportError (status 404).
class FixtureClient : public ExaminerClient {
 public:
  static FixtureClient Load(const std::filesystem::path& path);
  void add(const std::string& digest, CompletionResponse response);
  CompletionResponse complete(const CompletionRequest& request) override;
  std::size_t size() const { return fixtures_.size(); }

 private:
  std::map<std::string, CompletionResponse> fixtures_;
};

// Forwards to `inner` and appends every exchange to a fixture file.
class RecordingClient : public ExaminerClient {
 public:
  RecordingClient(ExaminerClient& inner, std::filesystem::path fixture_path);
  CompletionResponse complete(const CompletionRequest& request) override;

 private:
  ExaminerClient& inner_;
  std::filesystem::path path_;
  std::mutex mutex_;
};

struct ChatClientConfig {
  std::string base_url;  // e.g. "http://localhost:8000"
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key;
  std::chrono::seconds timeout{600};
  RetryPolicy retry;

  // NW_LLM_URL, NW_LLM_MODEL, NW_LLM_API_KEY override the given values.
  static ChatClientConfig FromEnvironment(ChatClientConfig defaults);
};

// Chat-completions wire format:
//   POST {"model", "messages": [{"role", "content"}], "temperature", "seed",
//         "response_format": {"type": "json_schema",
//                             "json_schema": {"name", "schema", "strict"}}}
//   <- {"choices": [{"message": {"content": "<json>"}}],
//       "usage": {"prompt_tokens", "completion_tokens"}}
class HttpChatClient : public ExaminerClient {
 public:
  explicit HttpChatClient(ChatClientConfig config);
  CompletionResponse complete(const CompletionRequest& request) override;

  // Request body as sent on the wire.
  Json request_body(const CompletionRequest& request) const;

 private:
  ChatClientConfig config_;
};

// Parses a chat-completions response body into a CompletionResponse.
// Throws TransportError when the body has no choices.
CompletionResponse parse_chat_response(const Json& body);

}  // namespace novelty::llm

#endif  // NOVELTY_LLM_CLIENT_H_
