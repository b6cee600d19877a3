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

// Single-step and hierarchical examination workflows over an
// ExaminerClient, with self-consistency voting and ablation switches.
//
// Every prompt renders the prior-art document one passage per line with a
// "[abstract]" / "[claim 3]" / "[par 12]" label. Passage labels coming back
// from the model are parsed with parse_reference_string; labels that fail
// to parse or do not exist in the document are dropped and counted.

#ifndef NOVELTY_LLM_WORKFLOWS_H_
#define NOVELTY_LLM_WORKFLOWS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "novelty/claim_text.h"
#include "novelty/llm/client.h"
#include "novelty/types.h"

namespace novelty::llm {

enum class WorkflowMode { kSingleStep, kHierarchical };
enum class SegmentationMode { kHeuristic, kLlm };

std::string_view to_string(WorkflowMode mode);
std::string_view to_string(SegmentationMode mode);
WorkflowMode parse_workflow_mode(std::string_view text);
SegmentationMode parse_segmentation_mode(std::string_view text);

inline constexpr double kSamplingTemperature = 0.7;

struct WorkflowConfig {
  WorkflowMode mode = WorkflowMode::kHierarchical;
  SegmentationMode segmentation = SegmentationMode::kHeuristic;
  bool include_summaries = true;
  // Aggregate over the examiner-cited passages instead of retrieved ones.
  bool use_gold_references = false;
  // Single-step only: false drops the document from the prompt.
  bool include_prior_art = true;
  std::size_t self_consistency_k = 1;
  double temperature = 0.0;
  double sampling_temperature = kSamplingTemperature;
  std::uint64_t seed = 0;
  std::size_t max_in_flight = 4;
  LocateOptions locate;
};

// Throws InvalidArgument: gold references outside hierarchical mode, k == 0
// or even k.
void validate_config(const WorkflowConfig& config);

struct CallRecord {
  std::string step;
  std::string prompt_digest;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  double latency_ms = 0.0;
  bool repair = false;
  std::string error;  // empty on success
};

struct WorkflowTrace {
  std::vector<CallRecord> calls;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::size_t dropped_ids = 0;
  std::vector<std::size_t> errored_features;
  std::vector<std::string> notes;

  std::size_t call_count() const { return calls.size(); }
  void record(CallRecord call);
  // Associative and commutative on every counter; call lists concatenate.
  void merge(const WorkflowTrace& other);
};

struct WorkflowOutput {
  ExaminationResult result;
  WorkflowTrace trace;
};

std::string render_document(const PriorArtDocument& doc);
std::string render_passages(const PriorArtDocument& doc, const std::set<PassageId>& ids);

// Prompt assembly, exposed so prefix and ablation contracts can be checked.
CompletionRequest single_step_request(const ExaminationRecord& record,
                                      const PriorArtDocument& doc,
                                      const WorkflowConfig& config);
CompletionRequest segmentation_request(std::string_view claim_text,
                                       const WorkflowConfig& config);
// Order: prior-art document, claim, feature.
CompletionRequest feature_request(const Feature& feature, std::string_view claim_text,
                                  const PriorArtDocument& doc,
                                  const WorkflowConfig& config);
CompletionRequest aggregate_request(std::string_view claim_text,
                                    const PriorArtDocument& doc,
                                    const std::set<PassageId>& filtered_ids,
                                    const std::vector<std::string>& summaries,
                                    const WorkflowConfig& config);

// Calls the client, parses with `parse`, and on SchemaError re-prompts once
// with the validation error appended. Every call lands in `trace`.
Json call_with_repair(ExaminerClient& client, const CompletionRequest& request,
                      const std::function<void(const Json&)>& validate,
                      WorkflowTrace& trace);

// Resolves model-cited labels against the document, dropping unknown or
// unparseable ones and duplicates. Adds the number dropped to `dropped`.
std::vector<PassageId> sanitize_passages(const std::vector<std::string>& labels,
                                         const PriorArtDocument& doc,
                                         std::size_t& dropped);

WorkflowOutput single_step_examine(const ExaminationRecord& record,
                                   const PriorArtDocument& doc, ExaminerClient& client,
                                   const WorkflowConfig& config);

// Falls back to heuristic segmentation when no returned feature anchors.
Segmentation segment_claim_llm(std::string_view claim_text, ExaminerClient& client,
                               const WorkflowConfig& config, WorkflowTrace& trace);

struct FeatureExamination {
  std::vector<PassageId> ranked_passages;
  FeatureVerdict verdict = FeatureVerdict::kNotDisclosed;
  std::string summary;
};

FeatureExamination examine_feature(const Feature& feature, std::string_view claim_text,
                                   const PriorArtDocument& doc, ExaminerClient& client,
                                   const WorkflowConfig& config, WorkflowTrace& trace);

// Passages shown to the aggregator: the union of retrieved passages of
// non-errored features, or the gold reference union under
// use_gold_references.
std::set<PassageId> aggregation_passages(const ExaminationRecord& record,
                                         const std::vector<FeatureOutcome>& outcomes,
                                         const WorkflowConfig& config);

// Throws InvalidArgument when every feature errored or there are none.
ClaimVerdict aggregate_claim_verdict(const ExaminationRecord& record,
                                     const PriorArtDocument& doc,
                                     const std::vector<FeatureOutcome>& outcomes,
                                     ExaminerClient& client, const WorkflowConfig& config,
                                     WorkflowTrace& trace);

WorkflowOutput hierarchical_examine(const ExaminationRecord& record,
                                    const PriorArtDocument& doc, ExaminerClient& client,
                                    const WorkflowConfig& config);

// One workflow execution for a given (seed, temperature).
using ExaminationRun = std::function<WorkflowOutput(std::uint64_t seed, double temperature)>;

// Runs k times with seeds seed..seed+k-1. Claim and feature verdicts are
// majority votes (features aligned to the first successful run by maximal
// span overlap); a passage is kept when it appears in at least ceil(k/2)
// runs, ranked by count then canonical order. Failed runs shrink k; throws
// the last error if every run fails. Throws InvalidArgument for even k.
WorkflowOutput self_consistency(const ExaminationRun& run, std::size_t k,
                                std::uint64_t seed,
                                double temperature = kSamplingTemperature);

// Dispatches on config.mode and applies self-consistency when k > 1.
WorkflowOutput examine(const ExaminationRecord& record, const PriorArtDocument& doc,
                       ExaminerClient& client, const WorkflowConfig& config);

}  // namespace novelty::llm

#endif  // NOVELTY_LLM_WORKFLOWS_H_
