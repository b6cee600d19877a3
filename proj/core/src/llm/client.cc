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

#include "novelty/llm/client.h"

#include <cstdlib>
#include <fstream>

#include "../http_post.h"
#include "novelty/digest.h"
#include "novelty/errors.h"
#include "novelty/record_io.h"

namespace novelty::llm {
namespace {

Json messages_json(const std::vector<ChatMessage>& messages) {
  Json out = Json::array();
  for (const ChatMessage& m : messages) out.push_back({{"role", m.role}, {"content", m.content}});
  return out;
}

// Accepts either bare JSON or JSON wrapped in a Markdown code fence.
Json parse_structured(const std::string& text) {
  std::string_view body = text;
  if (const auto open = body.find("```"); open != std::string_view::npos) {
    const auto line_end = body.find('\n', open);
    const auto close = body.rfind("```");
    if (line_end != std::string_view::npos && close > line_end) {
      body = body.substr(line_end + 1, close - line_end - 1);
    }
  }
  Json value = Json::parse(body.begin(), body.end(), nullptr, /*allow_exceptions=*/false);
  return value.is_discarded() ? Json() : value;
}

CompletionResponse response_from_fixture(const Json& line) {
  CompletionResponse r;
  const Json& payload = line.at("response");
  if (payload.is_string()) {
    r.raw = payload.get<std::string>();
    r.value = parse_structured(r.raw);
  } else {
    r.value = payload;
    r.raw = payload.dump();
  }
  if (line.contains("usage") && line["usage"].is_object()) {
    r.usage.prompt_tokens = line["usage"].value("prompt_tokens", std::size_t{0});
    r.usage.completion_tokens = line["usage"].value("completion_tokens", std::size_t{0});
  }
  return r;
}

}  // namespace

std::string request_digest(const CompletionRequest& request) {
  const Json canonical = {{"messages", messages_json(request.messages)},
                          {"schema_name", request.schema_name},
                          {"schema", request.output_schema},
                          {"temperature", request.temperature},
                          {"seed", request.seed}};
  return sha256_hex(canonical.dump());
}

FixtureClient FixtureClient::Load(const std::filesystem::path& path) {
  FixtureClient client;
  for (const Json& line : read_jsonl(path)) {
    try {
      client.add(line.at("digest").get<std::string>(), response_from_fixture(line));
    } catch (const Json::exception& e) {
      throw ParseError(std::string("malformed fixture: ") + e.what(), path.string());
    }
  }
  return client;
}

void FixtureClient::add(const std::string& digest, CompletionResponse response) {
  fixtures_[digest] = std::move(response);
}

CompletionResponse FixtureClient::complete(const CompletionRequest& request) {
  const std::string digest = request_digest(request);
  auto it = fixtures_.find(digest);
  if (it == fixtures_.end()) {
    throw TransportError("no fixture for " + request.step + " request " + digest, 404);
  }
  return it->second;
}

RecordingClient::RecordingClient(ExaminerClient& inner, std::filesystem::path fixture_path)
    : inner_(inner), path_(std::move(fixture_path)) {}

CompletionResponse RecordingClient::complete(const CompletionRequest& request) {
  CompletionResponse response = inner_.complete(request);
  const Json line = {{"digest", request_digest(request)},
                     {"step", request.step},
                     {"response", response.value.is_null() ? Json(response.raw) : response.value},
                     {"usage",
                      {{"prompt_tokens", response.usage.prompt_tokens},
                       {"completion_tokens", response.usage.completion_tokens}}}};
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot append to fixture file " + path_.string());
  out << line.dump() << '\n';
  return response;
}

ChatClientConfig ChatClientConfig::FromEnvironment(ChatClientConfig defaults) {
  if (const char* v = std::getenv("NW_LLM_URL")) defaults.base_url = v;
  if (const char* v = std::getenv("NW_LLM_MODEL")) defaults.model = v;
  if (const char* v = std::getenv("NW_LLM_API_KEY")) defaults.api_key = v;
  return defaults;
}

HttpChatClient::HttpChatClient(ChatClientConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw InvalidArgument("chat endpoint url is empty (set llm_url or NW_LLM_URL)");
  }
}

Json HttpChatClient::request_body(const CompletionRequest& request) const {
  Json body = {{"messages", messages_json(request.messages)},
               {"temperature", request.temperature},
               {"seed", request.seed}};
  if (!config_.model.empty()) body["model"] = config_.model;
  if (!request.output_schema.is_null()) {
    body["response_format"] = {
        {"type", "json_schema"},
        {"json_schema",
         {{"name", request.schema_name.empty() ? "output" : request.schema_name},
          {"schema", request.output_schema},
          {"strict", true}}}};
  }
  return body;
}

CompletionResponse HttpChatClient::complete(const CompletionRequest& request) {
  return parse_chat_response(internal::post_json(
      {config_.base_url, config_.path, config_.api_key, config_.timeout},
      request_body(request), config_.retry));
}

CompletionResponse parse_chat_response(const Json& body) {
  CompletionResponse r;
  if (!body.contains("choices") || !body["choices"].is_array() || body["choices"].empty()) {
    throw TransportError("chat response has no choices");
  }
  const Json& message = body["choices"][0].value("message", Json::object());
  if (message.contains("content") && message["content"].is_string()) {
    r.raw = message["content"].get<std::string>();
    r.value = parse_structured(r.raw);
  }
  if (body.contains("usage") && body["usage"].is_object()) {
    r.usage.prompt_tokens = body["usage"].value("prompt_tokens", std::size_t{0});
    r.usage.completion_tokens = body["usage"].value("completion_tokens", std::size_t{0});
  }
  return r;
}

}  // namespace novelty::llm
