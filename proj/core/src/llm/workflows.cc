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

#include "novelty/llm/workflows.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <thread>

#include "novelty/errors.h"
#include "novelty/record_io.h"

namespace novelty::llm {

std::string_view to_string(WorkflowMode mode) {
  return mode == WorkflowMode::kSingleStep ? "single_step" : "hierarchical";
}

std::string_view to_string(SegmentationMode mode) {
  return mode == SegmentationMode::kHeuristic ? "heuristic" : "llm";
}

WorkflowMode parse_workflow_mode(std::string_view text) {
  if (text == "single_step") return WorkflowMode::kSingleStep;
  if (text == "hierarchical") return WorkflowMode::kHierarchical;
  throw ParseError("unknown workflow mode", std::string(text));
}

SegmentationMode parse_segmentation_mode(std::string_view text) {
  if (text == "heuristic") return SegmentationMode::kHeuristic;
  if (text == "llm") return SegmentationMode::kLlm;
  throw ParseError("unknown segmentation mode", std::string(text));
}

void validate_config(const WorkflowConfig& config) {
  if (config.use_gold_references && config.mode != WorkflowMode::kHierarchical) {
    throw InvalidArgument("use_gold_references requires hierarchical mode");
  }
  if (config.self_consistency_k == 0 || config.self_consistency_k % 2 == 0) {
    throw InvalidArgument("self_consistency_k must be odd and >= 1, got " +
                          std::to_string(config.self_consistency_k));
  }
  if (config.max_in_flight == 0) throw InvalidArgument("max_in_flight must be >= 1");
}

void WorkflowTrace::record(CallRecord call) {
  prompt_tokens += call.prompt_tokens;
  completion_tokens += call.completion_tokens;
  calls.push_back(std::move(call));
}

void WorkflowTrace::merge(const WorkflowTrace& other) {
  calls.insert(calls.end(), other.calls.begin(), other.calls.end());
  prompt_tokens += other.prompt_tokens;
  completion_tokens += other.completion_tokens;
  dropped_ids += other.dropped_ids;
  errored_features.insert(errored_features.end(), other.errored_features.begin(),
                          other.errored_features.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

// --- Prompt assembly --------------------------------------------------------

namespace {

const Json kVerdictEnum = {"fully_disclosed", "partially_disclosed", "not_disclosed"};
const Json kClaimVerdictEnum = {"novel", "not_novel"};

constexpr std::string_view kSingleStepSystem =
    "You are a patent examiner assessing the novelty of a patent claim against one prior "
    "art document. Split the claim into its features. For each feature, list the labels of "
    "the prior art passages that disclose it (for example \"par 12\" or \"abstract\") and "
    "decide whether it is fully_disclosed, partially_disclosed or not_disclosed. A claim is "
    "novel if at least one feature is not disclosed. Answer with JSON only.";

constexpr std::string_view kSingleStepNoPriorArtSystem =
    "You are a patent examiner assessing the novelty of a patent claim. Split the claim into "
    "its features, decide for each whether it is fully_disclosed, partially_disclosed or "
    "not_disclosed in the state of the art, and decide whether the claim is novel. Leave "
    "passage lists empty. Answer with JSON only.";

constexpr std::string_view kSegmentSystem =
    "You split patent claims into their features. Copy each feature verbatim from the "
    "claim, in order, without overlap. Answer with JSON only.";

constexpr std::string_view kFeatureSystem =
    "You are a patent examiner. Analyse the prior art document with respect to one feature "
    "of the claim. List the labels of the passages relevant to the feature, most relevant "
    "first (for example \"par 12\" or \"abstract\"), decide whether the feature is "
    "fully_disclosed, partially_disclosed or not_disclosed, and summarise your reasoning "
    "briefly. Answer with JSON only.";

constexpr std::string_view kAggregateSystem =
    "You are a patent examiner. Decide whether the claim is novel over the prior art "
    "passages shown. A claim is novel if at least one of its features is not disclosed. "
    "Answer with JSON only.";

Json single_step_schema() {
  return {{"type", "object"},
          {"required", {"features", "claim_verdict"}},
          {"properties",
           {{"features",
             {{"type", "array"},
              {"items",
               {{"type", "object"},
                {"required", {"text", "passages", "verdict"}},
                {"properties",
                 {{"text", {{"type", "string"}}},
                  {"passages", {{"type", "array"}, {"items", {{"type", "string"}}}}},
                  {"verdict", {{"type", "string"}, {"enum", kVerdictEnum}}}}}}}}},
            {"claim_verdict", {{"type", "string"}, {"enum", kClaimVerdictEnum}}}}}};
}

Json segmentation_schema() {
  return {{"type", "object"},
          {"required", {"features"}},
          {"properties",
           {{"features", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}};
}

Json feature_schema() {
  return {{"type", "object"},
          {"required", {"passages", "verdict", "summary"}},
          {"properties",
           {{"passages", {{"type", "array"}, {"items", {{"type", "string"}}}}},
            {"verdict", {{"type", "string"}, {"enum", kVerdictEnum}}},
            {"summary", {{"type", "string"}}}}}};
}

Json aggregate_schema() {
  return {{"type", "object"},
          {"required", {"claim_verdict"}},
          {"properties", {{"claim_verdict", {{"type", "string"}, {"enum", kClaimVerdictEnum}}}}}};
}

CompletionRequest make_request(std::string step, std::string_view system, std::string user,
                               std::string schema_name, Json schema,
                               const WorkflowConfig& config) {
  CompletionRequest r;
  r.step = std::move(step);
  r.messages = {{"system", std::string(system)}, {"user", std::move(user)}};
  r.schema_name = std::move(schema_name);
  r.output_schema = std::move(schema);
  r.temperature = config.temperature;
  r.seed = config.seed;
  return r;
}

std::string document_section(const PriorArtDocument& doc) {
  return "Prior art document " + doc.doc_id + ":\n" + render_document(doc) + "\n\n";
}

std::string claim_section(std::string_view claim_text) {
  return "Claim:\n" + std::string(claim_text) + "\n\n";
}

}  // namespace

std::string render_document(const PriorArtDocument& doc) {
  std::string out;
  for (const Passage& p : doc.passages) {
    if (!out.empty()) out += '\n';
    out += "[" + p.id.label() + "] " + p.text;
  }
  return out;
}

std::string render_passages(const PriorArtDocument& doc, const std::set<PassageId>& ids) {
  std::string out;
  for (const Passage& p : doc.passages) {
    if (!ids.contains(p.id)) continue;
    if (!out.empty()) out += '\n';
    out += "[" + p.id.label() + "] " + p.text;
  }
  return out;
}

CompletionRequest single_step_request(const ExaminationRecord& record,
                                      const PriorArtDocument& doc,
                                      const WorkflowConfig& config) {
  std::string user;
  if (config.include_prior_art) user += document_section(doc);
  user += claim_section(record.claim_text);
  user += "Return the features of the claim with their passages and verdicts, and the "
          "claim verdict.";
  return make_request("single_step",
                      config.include_prior_art ? kSingleStepSystem : kSingleStepNoPriorArtSystem,
                      std::move(user), "single_step_examination", single_step_schema(),
                      config);
}

CompletionRequest segmentation_request(std::string_view claim_text,
                                       const WorkflowConfig& config) {
  return make_request("segment", kSegmentSystem,
                      claim_section(claim_text) + "Return the features of the claim.",
                      "claim_segmentation", segmentation_schema(), config);
}

CompletionRequest feature_request(const Feature& feature, std::string_view claim_text,
                                  const PriorArtDocument& doc, const WorkflowConfig& config) {
  std::string user = document_section(doc) + claim_section(claim_text);
  user += "Feature:\n" + feature.text + "\n";
  return make_request("feature", kFeatureSystem, std::move(user), "feature_examination",
                      feature_schema(), config);
}

CompletionRequest aggregate_request(std::string_view claim_text, const PriorArtDocument& doc,
                                    const std::set<PassageId>& filtered_ids,
                                    const std::vector<std::string>& summaries,
                                    const WorkflowConfig& config) {
  std::string user = "Prior art passages from " + doc.doc_id + ":\n";
  const std::string passages = render_passages(doc, filtered_ids);
  user += passages.empty() ? "(none)" : passages;
  user += "\n\n" + claim_section(claim_text);
  if (config.include_summaries && !summaries.empty()) {
    user += "Feature analyses:\n";
    for (const std::string& s : summaries) user += s + "\n";
    user += "\n";
  }
  user += "Return the claim verdict.";
  return make_request("aggregate", kAggregateSystem, std::move(user), "claim_verdict",
                      aggregate_schema(), config);
}

// --- Calls and parsing ------------------------------------------------------

Json call_with_repair(ExaminerClient& client, const CompletionRequest& request,
                      const std::function<void(const Json&)>& validate, WorkflowTrace& trace) {
  CompletionRequest current = request;
  for (int attempt = 0;; ++attempt) {
    CallRecord call;
    call.step = current.step;
    call.prompt_digest = request_digest(current);
    call.repair = attempt > 0;
    const auto start = std::chrono::steady_clock::now();
    CompletionResponse response;
    try {
      response = client.complete(current);
    } catch (const std::exception& e) {
      call.latency_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      call.error = e.what();
      trace.record(std::move(call));
      throw;
    }
    call.latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    call.prompt_tokens = response.usage.prompt_tokens;
    call.completion_tokens = response.usage.completion_tokens;
    try {
      if (response.value.is_null()) throw SchemaError("response is not valid JSON");
      validate(response.value);
      trace.record(std::move(call));
      return response.value;
    } catch (const SchemaError& e) {
      call.error = e.what();
      trace.record(std::move(call));
      if (attempt >= 1) throw;
      current.messages.push_back({"assistant", response.raw});
      current.messages.push_back(
          {"user", std::string("The previous answer was rejected: ") + e.what() +
                       ". Answer again with JSON that matches the schema."});
    } catch (const Json::exception& e) {
      call.error = e.what();
      trace.record(std::move(call));
      if (attempt >= 1) throw SchemaError(e.what());
      current.messages.push_back({"assistant", response.raw});
      current.messages.push_back(
          {"user", std::string("The previous answer was rejected: ") + e.what() +
                       ". Answer again with JSON that matches the schema."});
    }
  }
}

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw SchemaError(message);
}

void check_string_array(const Json& v, const char* field) {
  require(v.contains(field) && v[field].is_array(), std::string("missing array \"") + field + "\"");
  for (const Json& item : v[field]) {
    require(item.is_string(), std::string("\"") + field + "\" must hold strings");
  }
}

void check_enum(const Json& v, const char* field, bool claim) {
  require(v.contains(field) && v[field].is_string(),
          std::string("missing string \"") + field + "\"");
  const std::string value = v[field].get<std::string>();
  try {
    if (claim) {
      parse_novelty_label(value);
    } else {
      parse_feature_verdict(value);
    }
  } catch (const ParseError&) {
    throw SchemaError(std::string("\"") + field + "\" has invalid value \"" + value + "\"");
  }
}

void validate_feature_output(const Json& v) {
  require(v.is_object(), "expected an object");
  check_string_array(v, "passages");
  check_enum(v, "verdict", false);
  require(!v.contains("summary") || v["summary"].is_string(), "\"summary\" must be a string");
}

void validate_single_step(const Json& v) {
  require(v.is_object(), "expected an object");
  require(v.contains("features") && v["features"].is_array(), "missing array \"features\"");
  for (const Json& f : v["features"]) {
    require(f.is_object(), "features must be objects");
    require(f.contains("text") && f["text"].is_string(), "feature without \"text\"");
    check_string_array(f, "passages");
    check_enum(f, "verdict", false);
  }
  check_enum(v, "claim_verdict", true);
}

std::vector<std::string> strings_of(const Json& array) {
  std::vector<std::string> out;
  for (const Json& s : array) out.push_back(s.get<std::string>());
  return out;
}

Segmentation heuristic_or_empty(std::string_view claim_text) {
  if (claim_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  return segment_claim_heuristic(claim_text);
}

}  // namespace

std::vector<PassageId> sanitize_passages(const std::vector<std::string>& labels,
                                         const PriorArtDocument& doc, std::size_t& dropped) {
  std::vector<PassageId> out;
  std::set<PassageId> seen;
  for (std::string label : labels) {
    if (label.size() >= 2 && label.front() == '[' && label.back() == ']') {
      label = label.substr(1, label.size() - 2);
    }
    std::set<PassageId> ids;
    try {
      ids = parse_reference_string(label);
    } catch (const Error&) {
      ++dropped;
      continue;
    }
    if (ids.empty()) {
      ++dropped;
      continue;
    }
    for (const PassageId& id : ids) {
      if (doc.find(id) == nullptr) {
        ++dropped;
      } else if (seen.insert(id).second) {
        out.push_back(id);
      }
    }
  }
  return out;
}

WorkflowOutput single_step_examine(const ExaminationRecord& record,
                                   const PriorArtDocument& doc, ExaminerClient& client,
                                   const WorkflowConfig& config) {
  WorkflowOutput out;
  out.result.record_id = record_id(record);
  const Json value = call_with_repair(client, single_step_request(record, doc, config),
                                      validate_single_step, out.trace);
  std::vector<std::string> texts;
  for (const Json& f : value["features"]) texts.push_back(f["text"].get<std::string>());
  const LocateReport located = locate_feature_spans(record.claim_text, texts, config.locate);
  for (std::size_t k : located.dropped) {
    out.trace.notes.push_back("single_step: feature " + std::to_string(k) +
                              " could not be anchored in the claim");
  }
  out.result.predicted_segmentation = located.segmentation;
  std::size_t next_dropped = 0;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    if (next_dropped < located.dropped.size() && located.dropped[next_dropped] == k) {
      ++next_dropped;
      continue;
    }
    const Json& f = value["features"][k];
    FeatureOutcome outcome;
    outcome.ranked_passages =
        config.include_prior_art
            ? sanitize_passages(strings_of(f["passages"]), doc, out.trace.dropped_ids)
            : std::vector<PassageId>{};
    outcome.verdict = parse_feature_verdict(f["verdict"].get<std::string>());
    out.result.features.push_back(std::move(outcome));
  }
  out.result.claim_verdict = parse_novelty_label(value["claim_verdict"].get<std::string>());
  return out;
}

Segmentation segment_claim_llm(std::string_view claim_text, ExaminerClient& client,
                               const WorkflowConfig& config, WorkflowTrace& trace) {
  const Json value = call_with_repair(
      client, segmentation_request(claim_text, config),
      [](const Json& v) {
        require(v.is_object(), "expected an object");
        check_string_array(v, "features");
      },
      trace);
  const LocateReport located =
      locate_feature_spans(claim_text, strings_of(value["features"]), config.locate);
  for (std::size_t k : located.dropped) {
    trace.notes.push_back("segment: feature " + std::to_string(k) +
                          " could not be anchored in the claim");
  }
  if (located.segmentation.empty()) {
    trace.notes.push_back("segment: no feature anchored; using heuristic segmentation");
    return heuristic_or_empty(claim_text);
  }
  return located.segmentation;
}

FeatureExamination examine_feature(const Feature& feature, std::string_view claim_text,
                                   const PriorArtDocument& doc, ExaminerClient& client,
                                   const WorkflowConfig& config, WorkflowTrace& trace) {
  const Json value = call_with_repair(client, feature_request(feature, claim_text, doc, config),
                                      validate_feature_output, trace);
  FeatureExamination out;
  out.ranked_passages = sanitize_passages(strings_of(value["passages"]), doc, trace.dropped_ids);
  out.verdict = parse_feature_verdict(value["verdict"].get<std::string>());
  out.summary = value.value("summary", std::string());
  return out;
}

std::set<PassageId> aggregation_passages(const ExaminationRecord& record,
                                         const std::vector<FeatureOutcome>& outcomes,
                                         const WorkflowConfig& config) {
  std::set<PassageId> ids;
  if (config.use_gold_references) {
    if (record.gold_references) {
      for (const auto& refs : *record.gold_references) ids.insert(refs.begin(), refs.end());
    }
    return ids;
  }
  for (const FeatureOutcome& f : outcomes) {
    if (!f.errored) ids.insert(f.ranked_passages.begin(), f.ranked_passages.end());
  }
  return ids;
}

ClaimVerdict aggregate_claim_verdict(const ExaminationRecord& record,
                                     const PriorArtDocument& doc,
                                     const std::vector<FeatureOutcome>& outcomes,
                                     ExaminerClient& client, const WorkflowConfig& config,
                                     WorkflowTrace& trace) {
  const bool any_ok = std::any_of(outcomes.begin(), outcomes.end(),
                                  [](const FeatureOutcome& f) { return !f.errored; });
  if (!any_ok) throw InvalidArgument("aggregate_claim_verdict: no examined features");
  std::vector<std::string> summaries;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const FeatureOutcome& f = outcomes[i];
    if (f.errored) continue;
    std::string line = "Feature " + std::to_string(i + 1) + " (" +
                       std::string(to_string(f.verdict)) + ")";
    if (f.summary && !f.summary->empty()) line += ": " + *f.summary;
    summaries.push_back(std::move(line));
  }
  const Json value = call_with_repair(
      client,
      aggregate_request(record.claim_text, doc, aggregation_passages(record, outcomes, config),
                        summaries, config),
      [](const Json& v) {
        require(v.is_object(), "expected an object");
        check_enum(v, "claim_verdict", true);
      },
      trace);
  return parse_novelty_label(value["claim_verdict"].get<std::string>());
}

WorkflowOutput hierarchical_examine(const ExaminationRecord& record,
                                    const PriorArtDocument& doc, ExaminerClient& client,
                                    const WorkflowConfig& config) {
  WorkflowOutput out;
  out.result.record_id = record_id(record);
  out.result.predicted_segmentation =
      config.segmentation == SegmentationMode::kLlm
          ? segment_claim_llm(record.claim_text, client, config, out.trace)
          : heuristic_or_empty(record.claim_text);
  const auto& features = out.result.predicted_segmentation.features;
  const std::size_t n = features.size();

  // Per-feature calls run on a bounded pool; results and traces are kept by
  // feature index and merged in index order.
  std::vector<FeatureOutcome> outcomes(n);
  std::vector<WorkflowTrace> traces(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        FeatureExamination e =
            examine_feature(features[i], record.claim_text, doc, client, config, traces[i]);
        outcomes[i].ranked_passages = std::move(e.ranked_passages);
        outcomes[i].verdict = e.verdict;
        if (config.include_summaries) outcomes[i].summary = std::move(e.summary);
      } catch (const Error& e) {
        outcomes[i].errored = true;
        traces[i].errored_features.push_back(i);
        traces[i].notes.push_back("feature " + std::to_string(i) + " failed: " + e.what());
      }
    }
  };
  const std::size_t workers = std::min(config.max_in_flight, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const WorkflowTrace& t : traces) out.trace.merge(t);

  out.result.claim_verdict =
      aggregate_claim_verdict(record, doc, outcomes, client, config, out.trace);
  out.result.features = std::move(outcomes);
  return out;
}

// --- Self-consistency -------------------------------------------------------

namespace {

std::size_t overlap(const Span& a, const Span& b) {
  const std::size_t lo = std::max(a.start, b.start);
  const std::size_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

// Index of the feature in `seg` overlapping `span` the most; npos if none.
std::size_t best_overlap(const Segmentation& seg, const Span& span) {
  std::size_t best = static_cast<std::size_t>(-1);
  std::size_t best_overlap_len = 0;
  for (std::size_t j = 0; j < seg.size(); ++j) {
    const std::size_t o = overlap(seg.features[j].span, span);
    if (o > best_overlap_len) {
      best_overlap_len = o;
      best = j;
    }
  }
  return best;
}

// Majority over votes in run order; ties go to the tied value voted first.
template <typename T>
T majority(const std::vector<T>& votes) {
  std::map<T, std::size_t> counts;
  for (const T& v : votes) ++counts[v];
  T best = votes.front();
  std::size_t best_count = counts[best];
  for (const T& v : votes) {
    if (counts[v] > best_count) {
      best = v;
      best_count = counts[v];
    }
  }
  return best;
}

}  // namespace

WorkflowOutput self_consistency(const ExaminationRun& run, std::size_t k, std::uint64_t seed,
                                double temperature) {
  if (k == 0 || k % 2 == 0) {
    throw InvalidArgument("self-consistency needs an odd k >= 1, got " + std::to_string(k));
  }
  std::vector<WorkflowOutput> runs;
  WorkflowTrace trace;
  std::exception_ptr last_error;
  for (std::size_t i = 0; i < k; ++i) {
    try {
      runs.push_back(run(seed + i, temperature));
      trace.merge(runs.back().trace);
    } catch (const Error& e) {
      last_error = std::current_exception();
      trace.notes.push_back("self-consistency run " + std::to_string(i) + " failed: " + e.what());
    }
  }
  if (runs.empty()) std::rethrow_exception(last_error);
  if (k == 1) return std::move(runs.front());

  const std::size_t k_eff = runs.size();
  const std::size_t threshold = (k_eff + 1) / 2;
  WorkflowOutput out;
  out.result.record_id = runs.front().result.record_id;
  out.result.predicted_segmentation = runs.front().result.predicted_segmentation;

  std::vector<ClaimVerdict> claim_votes;
  for (const WorkflowOutput& r : runs) claim_votes.push_back(r.result.claim_verdict);
  out.result.claim_verdict = majority(claim_votes);

  for (const Feature& reference : out.result.predicted_segmentation.features) {
    std::vector<FeatureVerdict> votes;
    std::map<PassageId, std::size_t> passage_counts;
    for (const WorkflowOutput& r : runs) {
      const std::size_t j = best_overlap(r.result.predicted_segmentation, reference.span);
      if (j == static_cast<std::size_t>(-1) || j >= r.result.features.size()) continue;
      const FeatureOutcome& f = r.result.features[j];
      if (f.errored) continue;
      votes.push_back(f.verdict);
      for (const PassageId& id : f.ranked_passages) ++passage_counts[id];
    }
    FeatureOutcome merged;
    if (votes.empty()) {
      merged.errored = true;
    } else {
      merged.verdict = majority(votes);
      std::vector<std::pair<PassageId, std::size_t>> kept;
      for (const auto& [id, count] : passage_counts) {
        if (count >= threshold) kept.emplace_back(id, count);
      }
      // passage_counts iterates in canonical order; stable sort keeps it for ties.
      std::stable_sort(kept.begin(), kept.end(),
                       [](const auto& a, const auto& b) { return a.second > b.second; });
      for (const auto& [id, count] : kept) merged.ranked_passages.push_back(id);
    }
    out.result.features.push_back(std::move(merged));
  }
  trace.notes.push_back("self-consistency: " + std::to_string(k_eff) + " of " +
                        std::to_string(k) + " runs succeeded");
  out.trace = std::move(trace);
  return out;
}

WorkflowOutput examine(const ExaminationRecord& record, const PriorArtDocument& doc,
                       ExaminerClient& client, const WorkflowConfig& config) {
  validate_config(config);
  ExaminationRun run = [&](std::uint64_t seed, double temperature) {
    WorkflowConfig c = config;
    c.seed = seed;
    c.temperature = temperature;
    return c.mode == WorkflowMode::kSingleStep ? single_step_examine(record, doc, client, c)
                                               : hierarchical_examine(record, doc, client, c);
  };
  if (config.self_consistency_k == 1) return run(config.seed, config.temperature);
  return self_consistency(run, config.self_consistency_k, config.seed,
                          config.sampling_temperature);
}

}  // namespace novelty::llm
