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

// Workbench configuration. Every tunable constant of the pipeline has a
// documented key here; values come from (in increasing precedence) built-in
// defaults, a JSON config file, NW_<KEY> environment variables and
// command-line overrides.

#ifndef NOVELTY_CONFIG_H_
#define NOVELTY_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty/baselines.h"
#include "novelty/claim_text.h"
#include "novelty/dataset_ops.h"
#include "novelty/llm/workflows.h"
#include "novelty/metrics.h"

namespace novelty {

struct WorkbenchConfig {
  // claim text
  double locate_max_normalized_distance = 0.5;
  double locate_window_slack = 0.2;
  AlignmentDistance alignment_distance = AlignmentDistance::kRaw;

  // text similarity
  std::string tokenizer = "lowercase_alnum_runs";
  std::size_t tfidf_max_features = 500;
  std::size_t tfidf_max_ngram = 4;

  // metrics
  std::set<FeatureVerdict> nfi_novel_verdicts = default_novel_verdicts();

  // dataset construction
  std::size_t stratify_bins = 100;
  std::string length_unit = "words";
  SplitRatios split_ratios = kDefaultSplitRatios;
  std::string pipeline_order = "stratify_then_split";
  bool strip_numerals = true;
  bool adversarial_filter = true;
  std::uint64_t seed = 13;

  // baselines
  double random_expected_passages = 2.0;
  double rouge_threshold = kRougeThreshold;
  double embedding_threshold = kEmbeddingThreshold;
  std::size_t top_domain_classes = 50;
  double logreg_l2 = 1.0;
  int logreg_iterations = 500;
  double logreg_learning_rate = 0.1;

  // LLM workflows
  llm::SegmentationMode segmentation = llm::SegmentationMode::kHeuristic;
  bool include_summaries = true;
  bool use_gold_references = false;
  bool include_prior_art = true;
  std::size_t self_consistency_k = 1;
  double temperature = 0.0;
  double sampling_temperature = llm::kSamplingTemperature;
  std::size_t max_in_flight = 4;
  std::size_t schema_repair_attempts = 1;

  // clients
  std::string llm_client = "http";  // "http" | "fixture"
  std::string llm_fixture;
  std::string llm_url;
  std::string llm_model;
  std::string embedding_client = "hashing";  // "hashing" | "http"
  std::string embedding_url;
  std::string embedding_model;
  std::size_t embedding_dimensions = 256;
  int client_max_retries = 4;
  int client_initial_delay_ms = 500;

  // execution
  std::size_t jobs = 1;
};

// Defaults as a flat JSON object; the key set is the documented config
// surface.
nlohmann::json default_config_json();

// Throws ParseError for unknown keys or ill-typed values.
WorkbenchConfig config_from_json(const nlohmann::json& values);
nlohmann::json config_to_json(const WorkbenchConfig& config);

// Sets `key` from its textual form, coerced to the type of the default.
void apply_override(nlohmann::json& values, const std::string& key,
                    const std::string& text);

// For every known key, applies NW_<UPPERCASE_KEY> if set in `environ`.
void apply_environment(nlohmann::json& values,
                       const std::map<std::string, std::string>& environ);
std::map<std::string, std::string> process_environment();

// defaults <- file (if non-empty) <- environment <- overrides ("key=value").
WorkbenchConfig load_config(const std::filesystem::path& file,
                            const std::map<std::string, std::string>& environ,
                            const std::vector<std::string>& overrides);

// Views of the config consumed by individual modules.
llm::WorkflowConfig workflow_config(const WorkbenchConfig& config, llm::WorkflowMode mode);
LogRegOptions logreg_options(const WorkbenchConfig& config);
FeatureSpaceOptions feature_space_options(const WorkbenchConfig& config);
EvalOptions eval_options(const WorkbenchConfig& config);

}  // namespace novelty

#endif  // NOVELTY_CONFIG_H_
