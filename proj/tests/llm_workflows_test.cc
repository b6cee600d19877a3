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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <gtest/gtest.h>

#include "novelty/errors.h"
#include "novelty/llm/client.h"
#include "novelty/llm/workflows.h"
#include "novelty/record_io.h"
#include "test_util.h"

namespace novelty::llm {
namespace {

using testutil::make_doc;
using testutil::par;

// Answers by step; feature answers are keyed by feature text.
class ScriptedClient : public ExaminerClient {
 public:
  std::map<std::string, Json> features;
  Json aggregate = {{"claim_verdict", "novel"}};
  Json segment;
  Json single;
  std::vector<CompletionRequest> requests;
  // Optional per-feature delay to shuffle completion order.
  std::map<std::string, int> delay_ms;

  CompletionResponse complete(const CompletionRequest& request) override {
    {
      std::lock_guard lock(mutex_);
      requests.push_back(request);
    }
    CompletionResponse r;
    r.usage = {10, 3};
    if (request.step == "feature") {
      const std::string& user = request.messages[1].content;
      const std::size_t at = user.rfind("Feature:\n");
      const std::string text = user.substr(at + 9, user.size() - at - 10);
      if (auto it = delay_ms.find(text); it != delay_ms.end()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(it->second));
      }
      auto it = features.find(text);
      r.value = it != features.end()
                    ? it->second
                    : Json{{"passages", Json::array()}, {"verdict", "not_disclosed"},
                           {"summary", "nothing"}};
    } else if (request.step == "aggregate") {
      r.value = aggregate;
    } else if (request.step == "segment") {
      r.value = segment;
    } else {
      r.value = single;
    }
    r.raw = r.value.dump();
    return r;
  }

  std::vector<CompletionRequest> by_step(const std::string& step) const {
    std::vector<CompletionRequest> out;
    for (const auto& r : requests) {
      if (r.step == step) out.push_back(r);
    }
    return out;
  }

 private:
  std::mutex mutex_;
};

struct Case {
  PriorArtDocument doc = make_doc("D9", {"a rotor spins", "a housing encloses the rotor",
                                         "a seal closes the gap"});
  ExaminationRecord record;
  Case() {
    record.application_id = "A1";
    record.claim_text = "A pump comprising: a rotor; a housing.";
    record.prior_art_doc_id = "D9";
    record.gold_segmentation = testutil::literal_segmentation(
        record.claim_text, {"A pump comprising:", "a rotor", "a housing"});
    record.gold_references = FeatureReferences{{PassageId::Abstract()}, {par(1)}, {par(2)}};
  }
};

Json feature_answer(std::vector<std::string> passages, const std::string& verdict,
                    const std::string& summary = "s") {
  return {{"passages", passages}, {"verdict", verdict}, {"summary", summary}};
}

TEST(HierarchicalTest, CallBudgetAndPrefix) {
  Case c;
  ScriptedClient client;
  client.features["a rotor"] = feature_answer({"par 1"}, "fully_disclosed");
  client.features["a housing."] = feature_answer({"par 2", "par 999"}, "fully_disclosed");
  client.features["A pump comprising:"] = feature_answer({"abstract"}, "not_disclosed");
  WorkflowConfig config;
  const auto out = hierarchical_examine(c.record, c.doc, client, config);
  EXPECT_EQ(client.requests.size(), 4u);
  EXPECT_EQ(out.trace.call_count(), 4u);
  EXPECT_EQ(out.trace.prompt_tokens, 40u);
  EXPECT_EQ(out.trace.completion_tokens, 12u);
  EXPECT_EQ(out.trace.dropped_ids, 1u);
  ASSERT_EQ(out.result.features.size(), 3u);
  EXPECT_EQ(out.result.features[0].verdict, FeatureVerdict::kNotDisclosed);
  EXPECT_EQ(out.result.features[2].ranked_passages, std::vector<PassageId>{par(2)});
  EXPECT_EQ(out.result.claim_verdict, ClaimVerdict::kNovel);

  const auto feats = client.by_step("feature");
  ASSERT_EQ(feats.size(), 3u);
  const std::string prefix = "Prior art document D9:\n" + render_document(c.doc) + "\n\n";
  for (const auto& r : feats) {
    EXPECT_EQ(r.messages[0].content, feats[0].messages[0].content);
    EXPECT_EQ(r.messages[1].content.compare(0, prefix.size(), prefix), 0);
  }
}

TEST(HierarchicalTest, OrderIndependentUnderReversedCompletion) {
  Case c;
  ScriptedClient fast, slow;
  for (ScriptedClient* cl : {&fast, &slow}) {
    cl->features["a rotor"] = feature_answer({"par 1"}, "fully_disclosed");
    cl->features["a housing."] = feature_answer({"par 2"}, "partially_disclosed");
  }
  slow.delay_ms = {{"A pump comprising:", 60}, {"a rotor", 30}};
  WorkflowConfig config;
  config.max_in_flight = 3;
  const auto a = hierarchical_examine(c.record, c.doc, fast, config);
  const auto b = hierarchical_examine(c.record, c.doc, slow, config);
  EXPECT_EQ(a.result, b.result);
}

TEST(HierarchicalTest, ErroredFeatureIsMarkedAndSkipped) {
  Case c;
  ScriptedClient inner;
  CallbackClient client([&](const CompletionRequest& r) {
    if (r.step == "feature" && r.messages[1].content.ends_with("Feature:\na rotor\n")) {
      throw TransportError("boom", 503);
    }
    return inner.complete(r);
  });
  const auto out = hierarchical_examine(c.record, c.doc, client, WorkflowConfig{});
  EXPECT_TRUE(out.result.features[1].errored);
  EXPECT_EQ(out.trace.errored_features, std::vector<std::size_t>{1});
  const auto agg = inner.by_step("aggregate");
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].messages[1].content.find("Feature 2 "), std::string::npos);
}

TEST(AggregateTest, SummariesAblation) {
  Case c;
  std::vector<FeatureOutcome> outcomes(1);
  outcomes[0].summary = "the rotor is shown";
  outcomes[0].ranked_passages = {par(1)};
  WorkflowConfig with, without;
  without.include_summaries = false;
  ScriptedClient a, b;
  WorkflowTrace t;
  aggregate_claim_verdict(c.record, c.doc, outcomes, a, with, t);
  aggregate_claim_verdict(c.record, c.doc, outcomes, b, without, t);
  EXPECT_NE(a.requests[0].messages[1].content.find("Feature analyses:"), std::string::npos);
  EXPECT_NE(a.requests[0].messages[1].content.find("the rotor is shown"), std::string::npos);
  EXPECT_EQ(b.requests[0].messages[1].content.find("Feature analyses:"), std::string::npos);
  EXPECT_EQ(b.requests[0].messages[1].content.find("the rotor is shown"), std::string::npos);
}

TEST(AggregateTest, GoldReferencesFilterDocument) {
  Case c;
  std::vector<FeatureOutcome> outcomes(1);
  outcomes[0].ranked_passages = {par(3)};
  WorkflowConfig gold;
  gold.use_gold_references = true;
  EXPECT_EQ(aggregation_passages(c.record, outcomes, gold),
            (std::set<PassageId>{PassageId::Abstract(), par(1), par(2)}));
  EXPECT_EQ(aggregation_passages(c.record, outcomes, WorkflowConfig{}),
            std::set<PassageId>{par(3)});
  ScriptedClient client;
  WorkflowTrace t;
  aggregate_claim_verdict(c.record, c.doc, outcomes, client, gold, t);
  const std::string& user = client.requests[0].messages[1].content;
  EXPECT_NE(user.find("[par 1] a rotor spins"), std::string::npos);
  EXPECT_EQ(user.find("[par 3]"), std::string::npos);
  client.aggregate = {{"claim_verdict", "not_novel"}};
  EXPECT_EQ(aggregate_claim_verdict(c.record, c.doc, outcomes, client, gold, t),
            ClaimVerdict::kNotNovel);
  std::vector<FeatureOutcome> dead(2);
  dead[0].errored = dead[1].errored = true;
  EXPECT_THROW(aggregate_claim_verdict(c.record, c.doc, dead, client, gold, t), InvalidArgument);
}

TEST(ExamineFeatureTest, PassThroughAndEmptyRetrieval) {
  Case c;
  ScriptedClient client;
  client.features["a rotor"] = feature_answer({"[par 1]", "abstract", "par 1"}, "fully_disclosed");
  WorkflowTrace t;
  const Feature rotor{{19, 26}, "a rotor"};
  const auto e = examine_feature(rotor, c.record.claim_text, c.doc, client, WorkflowConfig{}, t);
  EXPECT_EQ(e.ranked_passages, (std::vector<PassageId>{par(1), PassageId::Abstract()}));
  EXPECT_EQ(e.verdict, FeatureVerdict::kFullyDisclosed);
  const Feature housing{{28, 37}, "a housing"};
  const auto n = examine_feature(housing, c.record.claim_text, c.doc, client, WorkflowConfig{}, t);
  EXPECT_TRUE(n.ranked_passages.empty());
  EXPECT_EQ(n.verdict, FeatureVerdict::kNotDisclosed);
}

TEST(SanitizeTest, DropsUnknownAndUnparseable) {
  Case c;
  std::size_t dropped = 0;
  const auto ids = sanitize_passages({"par 2", "par 999", "figure 3", "[abstract]", "par 2"},
                                     c.doc, dropped);
  EXPECT_EQ(ids, (std::vector<PassageId>{par(2), PassageId::Abstract()}));
  EXPECT_EQ(dropped, 2u);
}

TEST(SingleStepTest, PassThroughAndHallucination) {
  Case c;
  ScriptedClient client;
  client.single = {{"features",
                    {{{"text", "a rotor"}, {"passages", {"par 1", "par 999"}}, {"verdict", "fully_disclosed"}},
                     {{"text", "a housing"}, {"passages", {"par 2"}}, {"verdict", "not_disclosed"}}}},
                   {"claim_verdict", "novel"}};
  const auto out = single_step_examine(c.record, c.doc, client, WorkflowConfig{});
  EXPECT_EQ(out.trace.dropped_ids, 1u);
  ASSERT_EQ(out.result.features.size(), 2u);
  EXPECT_EQ(out.result.features[0].ranked_passages, std::vector<PassageId>{par(1)});
  EXPECT_EQ(out.result.predicted_segmentation.features[1].span, (Span{28, 37}));
  EXPECT_EQ(out.result.claim_verdict, ClaimVerdict::kNovel);
  EXPECT_EQ(client.requests.size(), 1u);
}

TEST(SingleStepTest, RepairOnceThenSucceed) {
  Case c;
  int calls = 0;
  std::vector<CompletionRequest> seen;
  CallbackClient client([&](const CompletionRequest& r) {
    seen.push_back(r);
    CompletionResponse out;
    if (calls++ == 0) {
      out.raw = "not json at all";
      return out;
    }
    out.value = {{"features", Json::array()}, {"claim_verdict", "not_novel"}};
    out.raw = out.value.dump();
    return out;
  });
  const auto out = single_step_examine(c.record, c.doc, client, WorkflowConfig{});
  EXPECT_EQ(calls, 2);
  ASSERT_EQ(out.trace.calls.size(), 2u);
  EXPECT_FALSE(out.trace.calls[0].error.empty());
  EXPECT_TRUE(out.trace.calls[1].repair);
  EXPECT_EQ(seen[1].messages.size(), 4u);
  EXPECT_EQ(seen[1].messages[2].role, "assistant");
  EXPECT_EQ(out.result.claim_verdict, ClaimVerdict::kNotNovel);
}

TEST(SingleStepTest, RepairBudgetIsOne) {
  Case c;
  int calls = 0;
  CallbackClient client([&](const CompletionRequest&) {
    ++calls;
    CompletionResponse out;
    out.value = {{"claim_verdict", "maybe"}};
    return out;
  });
  EXPECT_THROW(single_step_examine(c.record, c.doc, client, WorkflowConfig{}), SchemaError);
  EXPECT_EQ(calls, 2);
}

TEST(SingleStepTest, NoPriorArtAblationDropsDocument) {
  Case c;
  WorkflowConfig off;
  off.include_prior_art = false;
  const auto with = single_step_request(c.record, c.doc, WorkflowConfig{});
  const auto without = single_step_request(c.record, c.doc, off);
  EXPECT_NE(with.messages[1].content.find("a housing encloses"), std::string::npos);
  EXPECT_EQ(without.messages[1].content.find("a housing encloses"), std::string::npos);
  EXPECT_NE(with.messages[0].content, without.messages[0].content);
}

TEST(SegmentLlmTest, AnchorsTyposAndFallsBack) {
  Case c;
  ScriptedClient client;
  client.segment = {{"features", {"A pump comprising:", "a rotqr", "a housing"}}};
  WorkflowTrace t;
  const auto seg = segment_claim_llm(c.record.claim_text, client, WorkflowConfig{}, t);
  ASSERT_EQ(seg.size(), 3u);
  EXPECT_EQ(seg.features[1].text, "a rotor");
  client.segment = {{"features", {"completely unrelated sentence about gardening"}}};
  const auto fallback = segment_claim_llm(c.record.claim_text, client, WorkflowConfig{}, t);
  EXPECT_EQ(fallback, segment_claim_heuristic(c.record.claim_text));
}

TEST(HierarchicalTest, LlmSegmentationAddsOneCall) {
  Case c;
  ScriptedClient client;
  client.segment = {{"features", {"a rotor", "a housing"}}};
  WorkflowConfig config;
  config.segmentation = SegmentationMode::kLlm;
  hierarchical_examine(c.record, c.doc, client, config);
  EXPECT_EQ(client.requests.size(), 1u + 2u + 1u);
}

WorkflowOutput scripted_run(ClaimVerdict verdict, std::vector<PassageId> passages) {
  WorkflowOutput out;
  out.result.record_id = "A1/initial";
  out.result.predicted_segmentation.features = {{{0, 10}, "0123456789"}};
  FeatureOutcome f;
  f.ranked_passages = std::move(passages);
  f.verdict = verdict == ClaimVerdict::kNovel ? FeatureVerdict::kNotDisclosed
                                              : FeatureVerdict::kFullyDisclosed;
  out.result.features = {f};
  out.result.claim_verdict = verdict;
  CallRecord call;
  call.step = "aggregate";
  out.trace.record(call);
  return out;
}

TEST(SelfConsistencyTest, MajorityAndPassageThreshold) {
  const std::vector<WorkflowOutput> script = {
      scripted_run(ClaimVerdict::kNovel, {par(1)}),
      scripted_run(ClaimVerdict::kNovel, {par(1)}),
      scripted_run(ClaimVerdict::kNotNovel, {par(2)})};
  std::vector<std::uint64_t> seeds;
  std::vector<double> temps;
  const ExaminationRun run = [&](std::uint64_t seed, double temperature) {
    seeds.push_back(seed);
    temps.push_back(temperature);
    return script[seeds.size() - 1];
  };
  const auto out = self_consistency(run, 3, 40);
  EXPECT_EQ(seeds, (std::vector<std::uint64_t>{40, 41, 42}));
  EXPECT_EQ(temps, std::vector<double>(3, kSamplingTemperature));
  EXPECT_EQ(out.result.claim_verdict, ClaimVerdict::kNovel);
  EXPECT_EQ(out.result.features[0].ranked_passages, std::vector<PassageId>{par(1)});
  EXPECT_EQ(out.result.features[0].verdict, FeatureVerdict::kNotDisclosed);
  EXPECT_EQ(out.trace.call_count(), 3u);
  EXPECT_THROW(self_consistency(run, 2, 0), InvalidArgument);
}

TEST(SelfConsistencyTest, SingleRunIsIdentity) {
  const auto one = scripted_run(ClaimVerdict::kNotNovel, {par(3), par(1)});
  const ExaminationRun run = [&](std::uint64_t, double) { return one; };
  EXPECT_EQ(self_consistency(run, 1, 0).result, one.result);
}

TEST(SelfConsistencyTest, FailedRunsShrinkK) {
  int i = 0;
  const ExaminationRun run = [&](std::uint64_t, double) -> WorkflowOutput {
    if (i++ == 1) throw TransportError("down", 500);
    return scripted_run(i == 1 ? ClaimVerdict::kNovel : ClaimVerdict::kNotNovel, {par(1)});
  };
  const auto out = self_consistency(run, 3, 0);
  // Two survivors tie 1:1; the first vote wins.
  EXPECT_EQ(out.result.claim_verdict, ClaimVerdict::kNovel);
  const ExaminationRun dead = [](std::uint64_t, double) -> WorkflowOutput {
    throw TransportError("down", 500);
  };
  EXPECT_THROW(self_consistency(dead, 3, 0), TransportError);
}

TEST(ExamineTest, ValidatesConfig) {
  Case c;
  ScriptedClient client;
  WorkflowConfig bad;
  bad.mode = WorkflowMode::kSingleStep;
  bad.use_gold_references = true;
  EXPECT_THROW(examine(c.record, c.doc, client, bad), InvalidArgument);
  WorkflowConfig even;
  even.self_consistency_k = 2;
  EXPECT_THROW(examine(c.record, c.doc, client, even), InvalidArgument);
  WorkflowConfig k3;
  k3.self_consistency_k = 3;
  examine(c.record, c.doc, client, k3);
  EXPECT_EQ(client.requests.size(), 3u * 4u);
  for (const auto& r : client.requests) EXPECT_EQ(r.temperature, kSamplingTemperature);
}

TEST(TraceTest, MergeIsAssociativeAndCommutativeOnCounters) {
  auto make = [](std::size_t p, std::size_t d) {
    WorkflowTrace t;
    CallRecord c;
    c.prompt_tokens = p;
    c.completion_tokens = p / 2;
    t.record(c);
    t.dropped_ids = d;
    return t;
  };
  const auto a = make(5, 1), b = make(7, 2), c = make(11, 0);
  WorkflowTrace ab_c = a;
  ab_c.merge(b);
  ab_c.merge(c);
  WorkflowTrace c_ba = c;
  WorkflowTrace ba = b;
  ba.merge(a);
  c_ba.merge(ba);
  EXPECT_EQ(ab_c.prompt_tokens, c_ba.prompt_tokens);
  EXPECT_EQ(ab_c.completion_tokens, c_ba.completion_tokens);
  EXPECT_EQ(ab_c.dropped_ids, c_ba.dropped_ids);
  EXPECT_EQ(ab_c.call_count(), 3u);
}

TEST(ClientTest, DigestIgnoresStepAndFixtureReplays) {
  Case c;
  auto req = feature_request(Feature{{19, 26}, "a rotor"}, c.record.claim_text, c.doc, WorkflowConfig{});
  auto other = req;
  other.step = "renamed";
  EXPECT_EQ(request_digest(req), request_digest(other));
  other.seed = 1;
  EXPECT_NE(request_digest(req), request_digest(other));

  testutil::TempDir dir;
  const auto path = dir.path() / "fixture.jsonl";
  ScriptedClient scripted;
  scripted.features["a rotor"] = feature_answer({"par 1"}, "fully_disclosed", "seen");
  {
    RecordingClient rec(scripted, path);
    rec.complete(req);
  }
  auto fixture = FixtureClient::Load(path);
  EXPECT_EQ(fixture.size(), 1u);
  const auto replay = fixture.complete(req);
  EXPECT_EQ(replay.value["summary"], "seen");
  EXPECT_EQ(replay.usage.prompt_tokens, 10u);
  try {
    fixture.complete(other);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 404);
  }
}

TEST(ClientTest, FixtureStringResponsesParsed) {
  testutil::TempDir dir;
  const auto path = dir.path() / "f.jsonl";
  write_file(path, "{\"digest\": \"abc\", \"response\": \"```json\\n{\\\"claim_verdict\\\": \\\"novel\\\"}\\n```\"}\n");
  FixtureClient client = FixtureClient::Load(path);
  EXPECT_EQ(client.size(), 1u);
}

TEST(ClientTest, ChatRequestBodyAndResponseParsing) {
  ChatClientConfig cfg;
  cfg.base_url = "http://127.0.0.1:1";
  cfg.model = "m";
  HttpChatClient client(cfg);
  CompletionRequest req;
  req.messages = {{"system", "s"}, {"user", "u"}};
  req.schema_name = "claim_verdict";
  req.output_schema = {{"type", "object"}};
  req.seed = 7;
  const Json body = client.request_body(req);
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"][1]["content"], "u");
  EXPECT_EQ(body["seed"], 7);
  EXPECT_EQ(body["response_format"]["type"], "json_schema");
  EXPECT_EQ(body["response_format"]["json_schema"]["name"], "claim_verdict");
  const Json reply = {{"choices", {{{"message", {{"content", "{\"claim_verdict\": \"novel\"}"}}}}}},
                      {"usage", {{"prompt_tokens", 12}, {"completion_tokens", 4}}}};
  const auto parsed = parse_chat_response(reply);
  EXPECT_EQ(parsed.value["claim_verdict"], "novel");
  EXPECT_EQ(parsed.usage.prompt_tokens, 12u);
  EXPECT_THROW(parse_chat_response(Json{{"choices", Json::array()}}), TransportError);
}

}  // namespace
}  // namespace novelty::llm
