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

#include "novelty/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "novelty/errors.h"
#include "novelty/record_io.h"

extern char** environ;

namespace novelty {
namespace {

using nlohmann::json;

std::string_view to_string(AlignmentDistance d) {
  return d == AlignmentDistance::kRaw ? "raw" : "normalized";
}

AlignmentDistance parse_alignment(std::string_view text) {
  if (text == "raw") return AlignmentDistance::kRaw;
  if (text == "normalized") return AlignmentDistance::kNormalized;
  throw ParseError("alignment_distance must be \"raw\" or \"normalized\"", std::string(text));
}

bool same_kind(const json& value, const json& reference) {
  if (reference.is_boolean()) return value.is_boolean();
  if (reference.is_number_unsigned()) {
    return value.is_number_unsigned() ||
           (value.is_number_integer() && value.get<std::int64_t>() >= 0);
  }
  if (reference.is_number_integer()) return value.is_number_integer();
  if (reference.is_number_float()) return value.is_number();
  if (reference.is_string()) return value.is_string();
  if (reference.is_array()) return value.is_array();
  return false;
}

template <typename T>
T field(const json& values, const char* key) {
  try {
    return values.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config key \"") + key + "\": " + e.what(), key);
  }
}

void check(bool condition, const std::string& key, const std::string& message) {
  if (!condition) throw ParseError("config key \"" + key + "\": " + message, key);
}

bool parse_bool(const std::string& key, std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ParseError("config key \"" + key + "\" expects a boolean", text);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

json coerce(const std::string& key, const json& reference, const std::string& text) {
  std::size_t used = 0;
  try {
    if (reference.is_boolean()) return parse_bool(key, text);
    if (reference.is_number_unsigned()) {
      check(!text.empty() && text.front() != '-', key, "expects a non-negative integer");
      const unsigned long long v = std::stoull(text, &used);
      check(used == text.size(), key, "expects a non-negative integer");
      return v;
    }
    if (reference.is_number_integer()) {
      const long long v = std::stoll(text, &used);
      check(used == text.size(), key, "expects an integer");
      return v;
    }
    if (reference.is_number_float()) {
      const double v = std::stod(text, &used);
      check(used == text.size(), key, "expects a number");
      return v;
    }
  } catch (const std::logic_error&) {
    throw ParseError("config key \"" + key + "\" cannot parse value", text);
  }
  if (reference.is_string()) return text;
  if (reference.is_array()) {
    json parsed = json::parse(text, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_array()) return parsed;
    json out = json::array();
    const bool numeric = !reference.empty() && reference.front().is_number();
    for (const std::string& item : split_commas(text)) {
      out.push_back(numeric ? coerce(key, reference.front(), item) : json(item));
    }
    return out;
  }
  throw ParseError("config key \"" + key + "\" has an unsupported type", text);
}

std::string env_name(const std::string& key) {
  std::string out = "NW_";
  for (char c : key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

json default_config_json() { return config_to_json(WorkbenchConfig{}); }

json config_to_json(const WorkbenchConfig& c) {
  json verdicts = json::array();
  for (FeatureVerdict v : c.nfi_novel_verdicts) verdicts.push_back(to_string(v));
  return {
      {"locate_max_normalized_distance", c.locate_max_normalized_distance},
      {"locate_window_slack", c.locate_window_slack},
      {"alignment_distance", to_string(c.alignment_distance)},
      {"tokenizer", c.tokenizer},
      {"tfidf_max_features", c.tfidf_max_features},
      {"tfidf_max_ngram", c.tfidf_max_ngram},
      {"nfi_novel_verdicts", verdicts},
      {"stratify_bins", c.stratify_bins},
      {"length_unit", c.length_unit},
      {"split_ratios", c.split_ratios},
      {"pipeline_order", c.pipeline_order},
      {"strip_numerals", c.strip_numerals},
      {"adversarial_filter", c.adversarial_filter},
      {"seed", c.seed},
      {"random_expected_passages", c.random_expected_passages},
      {"rouge_threshold", c.rouge_threshold},
      {"embedding_threshold", c.embedding_threshold},
      {"top_domain_classes", c.top_domain_classes},
      {"logreg_l2", c.logreg_l2},
      {"logreg_iterations", c.logreg_iterations},
      {"logreg_learning_rate", c.logreg_learning_rate},
      {"segmentation", llm::to_string(c.segmentation)},
      {"include_summaries", c.include_summaries},
      {"use_gold_references", c.use_gold_references},
      {"include_prior_art", c.include_prior_art},
      {"self_consistency_k", c.self_consistency_k},
      {"temperature", c.temperature},
      {"sampling_temperature", c.sampling_temperature},
      {"max_in_flight", c.max_in_flight},
      {"schema_repair_attempts", c.schema_repair_attempts},
      {"llm_client", c.llm_client},
      {"llm_fixture", c.llm_fixture},
      {"llm_url", c.llm_url},
      {"llm_model", c.llm_model},
      {"embedding_client", c.embedding_client},
      {"embedding_url", c.embedding_url},
      {"embedding_model", c.embedding_model},
      {"embedding_dimensions", c.embedding_dimensions},
      {"client_max_retries", c.client_max_retries},
      {"client_initial_delay_ms", c.client_initial_delay_ms},
      {"jobs", c.jobs},
  };
}

WorkbenchConfig config_from_json(const json& values) {
  if (!values.is_object()) throw ParseError("config must be a JSON object");
  const json defaults = default_config_json();
  json merged = defaults;
  for (const auto& [key, value] : values.items()) {
    if (!defaults.contains(key)) throw ParseError("unknown config key \"" + key + "\"", key);
    check(same_kind(value, defaults[key]), key,
          "expected " + std::string(defaults[key].type_name()) + ", got " + value.type_name());
    merged[key] = value;
  }

  WorkbenchConfig c;
  c.locate_max_normalized_distance = field<double>(merged, "locate_max_normalized_distance");
  c.locate_window_slack = field<double>(merged, "locate_window_slack");
  c.alignment_distance = parse_alignment(field<std::string>(merged, "alignment_distance"));
  c.tokenizer = field<std::string>(merged, "tokenizer");
  check(c.tokenizer == "lowercase_alnum_runs", "tokenizer",
        "only \"lowercase_alnum_runs\" is implemented");
  c.tfidf_max_features = field<std::size_t>(merged, "tfidf_max_features");
  c.tfidf_max_ngram = field<std::size_t>(merged, "tfidf_max_ngram");
  check(c.tfidf_max_ngram >= 1, "tfidf_max_ngram", "must be >= 1");
  c.nfi_novel_verdicts.clear();
  try {
    for (const json& v : merged.at("nfi_novel_verdicts")) {
      c.nfi_novel_verdicts.insert(parse_feature_verdict(v.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config key \"nfi_novel_verdicts\": ") + e.what());
  }
  c.stratify_bins = field<std::size_t>(merged, "stratify_bins");
  check(c.stratify_bins >= 1, "stratify_bins", "must be >= 1");
  c.length_unit = field<std::string>(merged, "length_unit");
  check(c.length_unit == "words", "length_unit", "only \"words\" is implemented");
  const auto ratios = field<std::vector<double>>(merged, "split_ratios");
  check(ratios.size() == 3, "split_ratios", "expects three values (train, val, test)");
  std::copy(ratios.begin(), ratios.end(), c.split_ratios.begin());
  double sum = 0.0;
  for (double r : c.split_ratios) {
    check(r >= 0.0, "split_ratios", "values must be non-negative");
    sum += r;
  }
  check(std::abs(sum - 1.0) <= 1e-9, "split_ratios", "values must sum to 1");
  c.pipeline_order = field<std::string>(merged, "pipeline_order");
  check(c.pipeline_order == "stratify_then_split" || c.pipeline_order == "split_then_stratify",
        "pipeline_order", "must be \"stratify_then_split\" or \"split_then_stratify\"");
  c.strip_numerals = field<bool>(merged, "strip_numerals");
  c.adversarial_filter = field<bool>(merged, "adversarial_filter");
  c.seed = field<std::uint64_t>(merged, "seed");
  c.random_expected_passages = field<double>(merged, "random_expected_passages");
  check(c.random_expected_passages >= 0.0, "random_expected_passages", "must be >= 0");
  c.rouge_threshold = field<double>(merged, "rouge_threshold");
  c.embedding_threshold = field<double>(merged, "embedding_threshold");
  c.top_domain_classes = field<std::size_t>(merged, "top_domain_classes");
  c.logreg_l2 = field<double>(merged, "logreg_l2");
  check(c.logreg_l2 >= 0.0, "logreg_l2", "must be >= 0");
  c.logreg_iterations = field<int>(merged, "logreg_iterations");
  check(c.logreg_iterations >= 0, "logreg_iterations", "must be >= 0");
  c.logreg_learning_rate = field<double>(merged, "logreg_learning_rate");
  check(c.logreg_learning_rate > 0.0, "logreg_learning_rate", "must be > 0");
  c.segmentation = llm::parse_segmentation_mode(field<std::string>(merged, "segmentation"));
  c.include_summaries = field<bool>(merged, "include_summaries");
  c.use_gold_references = field<bool>(merged, "use_gold_references");
  c.include_prior_art = field<bool>(merged, "include_prior_art");
  c.self_consistency_k = field<std::size_t>(merged, "self_consistency_k");
  check(c.self_consistency_k % 2 == 1, "self_consistency_k", "must be odd and >= 1");
  c.temperature = field<double>(merged, "temperature");
  c.sampling_temperature = field<double>(merged, "sampling_temperature");
  check(c.sampling_temperature > 0.0 || c.self_consistency_k == 1, "sampling_temperature",
        "must be > 0 when self_consistency_k > 1");
  c.max_in_flight = field<std::size_t>(merged, "max_in_flight");
  check(c.max_in_flight >= 1, "max_in_flight", "must be >= 1");
  c.schema_repair_attempts = field<std::size_t>(merged, "schema_repair_attempts");
  check(c.schema_repair_attempts == 1, "schema_repair_attempts",
        "only a single repair re-prompt is supported");
  c.llm_client = field<std::string>(merged, "llm_client");
  check(c.llm_client == "http" || c.llm_client == "fixture", "llm_client",
        "must be \"http\" or \"fixture\"");
  c.llm_fixture = field<std::string>(merged, "llm_fixture");
  c.llm_url = field<std::string>(merged, "llm_url");
  c.llm_model = field<std::string>(merged, "llm_model");
  c.embedding_client = field<std::string>(merged, "embedding_client");
  check(c.embedding_client == "hashing" || c.embedding_client == "http", "embedding_client",
        "must be \"hashing\" or \"http\"");
  c.embedding_url = field<std::string>(merged, "embedding_url");
  c.embedding_model = field<std::string>(merged, "embedding_model");
  c.embedding_dimensions = field<std::size_t>(merged, "embedding_dimensions");
  check(c.embedding_dimensions >= 1, "embedding_dimensions", "must be >= 1");
  c.client_max_retries = field<int>(merged, "client_max_retries");
  check(c.client_max_retries >= 0, "client_max_retries", "must be >= 0");
  c.client_initial_delay_ms = field<int>(merged, "client_initial_delay_ms");
  check(c.client_initial_delay_ms >= 0, "client_initial_delay_ms", "must be >= 0");
  c.jobs = field<std::size_t>(merged, "jobs");
  check(c.jobs >= 1, "jobs", "must be >= 1");
  return c;
}

void apply_override(json& values, const std::string& key, const std::string& text) {
  const json defaults = default_config_json();
  if (!defaults.contains(key)) throw ParseError("unknown config key \"" + key + "\"", key);
  values[key] = coerce(key, defaults[key], text);
}

void apply_environment(json& values, const std::map<std::string, std::string>& environ_map) {
  const json defaults = default_config_json();
  for (const auto& [key, reference] : defaults.items()) {
    if (auto it = environ_map.find(env_name(key)); it != environ_map.end()) {
      apply_override(values, key, it->second);
    }
  }
}

std::map<std::string, std::string> process_environment() {
  std::map<std::string, std::string> out;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    const std::string entry = *e;
    const auto eq = entry.find('=');
    if (eq != std::string::npos && entry.compare(0, 3, "NW_") == 0) {
      out[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
  }
  return out;
}

WorkbenchConfig load_config(const std::filesystem::path& file,
                            const std::map<std::string, std::string>& environ_map,
                            const std::vector<std::string>& overrides) {
  json values = json::object();
  if (!file.empty()) {
    json from_file;
    try {
      from_file = json::parse(read_file(file));
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed config file: ") + e.what(), file.string());
    }
    if (!from_file.is_object()) throw ParseError("config file must hold a JSON object",
                                                 file.string());
    for (const auto& [key, value] : from_file.items()) values[key] = value;
  }
  apply_environment(values, environ_map);
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("override must look like key=value", item);
    }
    apply_override(values, item.substr(0, eq), item.substr(eq + 1));
  }
  return config_from_json(values);
}

llm::WorkflowConfig workflow_config(const WorkbenchConfig& c, llm::WorkflowMode mode) {
  llm::WorkflowConfig w;
  w.mode = mode;
  w.segmentation = c.segmentation;
  w.include_summaries = c.include_summaries;
  w.use_gold_references = c.use_gold_references;
  w.include_prior_art = c.include_prior_art;
  w.self_consistency_k = c.self_consistency_k;
  w.temperature = c.temperature;
  w.sampling_temperature = c.sampling_temperature;
  w.seed = c.seed;
  w.max_in_flight = c.max_in_flight;
  w.locate.max_normalized_distance = c.locate_max_normalized_distance;
  w.locate.window_slack = c.locate_window_slack;
  return w;
}

LogRegOptions logreg_options(const WorkbenchConfig& c) {
  LogRegOptions o;
  o.l2 = c.logreg_l2;
  o.iterations = c.logreg_iterations;
  o.learning_rate = c.logreg_learning_rate;
  o.seed = c.seed;
  return o;
}

FeatureSpaceOptions feature_space_options(const WorkbenchConfig& c) {
  FeatureSpaceOptions o;
  o.top_domain_classes = c.top_domain_classes;
  o.tfidf.max_features = c.tfidf_max_features;
  o.tfidf.max_ngram = c.tfidf_max_ngram;
  return o;
}

EvalOptions eval_options(const WorkbenchConfig& c) {
  EvalOptions o;
  o.retrieval.alignment = c.alignment_distance;
  o.novel_verdicts = c.nfi_novel_verdicts;
  return o;
}

}  // namespace novelty
