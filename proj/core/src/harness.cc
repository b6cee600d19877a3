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

#include "novelty/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <thread>

#include "novelty/baselines.h"
#include "novelty/digest.h"
#include "novelty/errors.h"
#include "novelty/llm/workflows.h"
#include "novelty/model_io.h"
#include "novelty/record_io.h"

namespace novelty {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestFormat = "novelty.run/1";

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path manifest_path_for(const fs::path& predictions) {
  return fs::path(predictions.string() + ".manifest.json");
}

fs::path trace_path_for(const fs::path& predictions) {
  return fs::path(predictions.string() + ".trace.jsonl");
}

void require_file(const fs::path& path, const std::string& hint) {
  if (!fs::exists(path)) throw InvalidArgument("missing " + path.string() + " (" + hint + ")");
}

struct PreparedCorpus {
  std::vector<ExaminationRecord> records;
  DocumentIndex docs;
  SplitAssignment split;
};

PreparedCorpus load_prepared(const Workspace& ws) {
  const fs::path dir = ws.prepared_dir();
  require_file(dir / "records.jsonl", "run `nw prepare` first");
  PreparedCorpus c;
  c.records = read_records(dir / "records.jsonl");
  c.docs = index_documents(read_documents(dir / "docs.jsonl"));
  c.split = read_split(dir / "split.jsonl");
  return c;
}

std::vector<const ExaminationRecord*> select_split(const PreparedCorpus& corpus,
                                                   const std::string& split) {
  std::optional<Split> wanted;
  if (split != "all") wanted = parse_split(split);
  std::vector<const ExaminationRecord*> out;
  for (const ExaminationRecord& r : corpus.records) {
    const std::string id = record_id(r);
    auto it = corpus.split.find(id);
    if (it == corpus.split.end()) {
      throw InvalidArgument("record " + id + " has no split assignment");
    }
    if (!wanted || it->second.split == *wanted) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    return record_id(*a) < record_id(*b);
  });
  return out;
}

const PriorArtDocument& doc_for(const DocumentIndex& docs, const ExaminationRecord& r) {
  auto it = docs.find(r.prior_art_doc_id);
  if (it == docs.end()) {
    throw InvalidArgument("record " + record_id(r) + " cites unknown document " +
                          r.prior_art_doc_id);
  }
  return it->second;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  const std::size_t workers = std::min(jobs, n);
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
}

}  // namespace

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

fs::path Workspace::resolve(const fs::path& path) const {
  return path.is_absolute() ? path : root_ / path;
}

// --- ingest -------------------------------------------------------------------

IngestResult cmd_ingest(const Workspace& ws, const fs::path& records_path,
                        const fs::path& docs_path) {
  const fs::path records_file = ws.resolve(records_path);
  const fs::path docs_file = ws.resolve(docs_path);
  std::vector<PriorArtDocument> doc_list = read_documents(docs_file);
  std::vector<ExaminationRecord> records = read_records(records_file);

  IngestResult result;
  result.records = records.size();
  result.documents = doc_list.size();
  for (const PriorArtDocument& d : doc_list) {
    for (Violation& v : validate_document(d)) {
      result.violations.push_back({"doc:" + d.doc_id, std::move(v)});
    }
  }
  DocumentIndex docs;
  for (PriorArtDocument& d : doc_list) {
    const std::string id = d.doc_id;
    if (!docs.emplace(id, std::move(d)).second) {
      result.violations.push_back(
          {"doc:" + id, {"duplicate_document", "document " + id + " appears more than once"}});
    }
  }
  std::set<std::string> seen;
  for (const ExaminationRecord& r : records) {
    const std::string id = record_id(r);
    if (!seen.insert(id).second) {
      result.violations.push_back({id, {"duplicate_record", "record " + id + " appears twice"}});
    }
    auto it = docs.find(r.prior_art_doc_id);
    if (it == docs.end()) {
      result.violations.push_back(
          {id, {"missing_document", "prior-art document " + r.prior_art_doc_id +
                                        " is not in " + docs_file.string()}});
      continue;
    }
    for (Violation& v : validate_record(r, it->second)) {
      result.violations.push_back({id, std::move(v)});
    }
  }
  result.accepted = result.violations.empty();

  json violations = json::array();
  for (const RecordViolation& v : result.violations) {
    violations.push_back({{"record_id", v.record_id},
                          {"code", v.violation.code},
                          {"message", v.violation.message}});
  }
  const json report = {{"records", result.records},
                       {"documents", result.documents},
                       {"accepted", result.accepted},
                       {"records_sha256", file_sha256(records_file)},
                       {"docs_sha256", file_sha256(docs_file)},
                       {"violations", violations}};
  write_file(ws.corpus_dir() / "validation_report.json", report.dump(2) + "\n");
  if (result.accepted) {
    fs::create_directories(ws.corpus_dir());
    const fs::path records_out = ws.corpus_dir() / "records.jsonl";
    const fs::path docs_out = ws.corpus_dir() / "docs.jsonl";
    if (!fs::exists(records_out) || !fs::equivalent(records_file, records_out)) {
      fs::copy_file(records_file, records_out, fs::copy_options::overwrite_existing);
    }
    if (!fs::exists(docs_out) || !fs::equivalent(docs_file, docs_out)) {
      fs::copy_file(docs_file, docs_out, fs::copy_options::overwrite_existing);
    }
  }
  return result;
}

// --- synth --------------------------------------------------------------------

SynthResult cmd_synth(const Workspace& ws, std::uint64_t seed, std::size_t n_applications,
                      const SynthOptions& options, const fs::path& out_dir) {
  const SyntheticCorpus corpus = generate_synthetic_corpus(seed, n_applications, options);
  const fs::path dir = ws.resolve(out_dir);
  SynthResult result;
  result.records_path = dir / "records.jsonl";
  result.docs_path = dir / "docs.jsonl";
  write_jsonl_as(result.records_path, corpus.records);
  write_jsonl_as(result.docs_path, corpus.documents);
  result.records = corpus.records.size();
  result.documents = corpus.documents.size();
  return result;
}

// --- prepare ------------------------------------------------------------------

SplitAssignment read_split(const fs::path& path) {
  SplitAssignment out;
  std::size_t line = 0;
  for (const json& row : read_jsonl(path)) {
    ++line;
    try {
      SplitEntry e{parse_split(row.at("split").get<std::string>()),
                   row.value("adversarial", false)};
      if (e.adversarial && e.split != Split::kTest) {
        throw ParseError("adversarial flag outside the test split");
      }
      if (!out.emplace(row.at("record_id").get<std::string>(), e).second) {
        throw ParseError("duplicate record id");
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed split row: ") + e.what(), path.string(), line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), path.string(), line);
    }
  }
  return out;
}

void write_split(const fs::path& path, const SplitAssignment& split) {
  std::vector<json> rows;
  for (const auto& [id, entry] : split) {
    rows.push_back({{"record_id", id},
                    {"split", to_string(entry.split)},
                    {"adversarial", entry.adversarial}});
  }
  write_jsonl(path, rows);
}

PrepareResult cmd_prepare(const Workspace& ws, const WorkbenchConfig& config) {
  const fs::path records_in = ws.corpus_dir() / "records.jsonl";
  const fs::path docs_in = ws.corpus_dir() / "docs.jsonl";
  require_file(records_in, "run `nw ingest` first");
  std::vector<ExaminationRecord> records = read_records(records_in);
  const DocumentIndex docs = index_documents(read_documents(docs_in));

  PrepareResult result;
  result.input_records = records.size();
  if (config.strip_numerals) records = strip_corpus_numerals(records);

  auto keep_only = [](const std::vector<ExaminationRecord>& all,
                      const std::vector<std::string>& ids) {
    const std::set<std::string> wanted(ids.begin(), ids.end());
    std::vector<ExaminationRecord> out;
    for (const ExaminationRecord& r : all) {
      if (wanted.contains(record_id(r))) out.push_back(r);
    }
    return out;
  };

  SplitAssignment assignment;
  if (config.pipeline_order == "stratify_then_split") {
    records = keep_only(records, stratify_balance(records, config.stratify_bins, config.seed));
    assignment = split(records, config.split_ratios, config.seed);
  } else {
    const SplitAssignment full = split(records, config.split_ratios, config.seed);
    std::vector<std::string> kept;
    for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
      std::vector<ExaminationRecord> part;
      for (const ExaminationRecord& r : records) {
        if (full.at(record_id(r)).split == s) part.push_back(r);
      }
      const auto ids = stratify_balance(part, config.stratify_bins,
                                        config.seed + static_cast<std::uint64_t>(s));
      kept.insert(kept.end(), ids.begin(), ids.end());
    }
    records = keep_only(records, kept);
    for (const ExaminationRecord& r : records) assignment[record_id(r)] = full.at(record_id(r));
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return record_id(a) < record_id(b);
  });
  result.stratified_records = records.size();

  std::vector<ExaminationRecord> train, test;
  for (const ExaminationRecord& r : records) {
    switch (assignment.at(record_id(r)).split) {
      case Split::kTrain: ++result.train; train.push_back(r); break;
      case Split::kVal: ++result.val; break;
      case Split::kTest: ++result.test; test.push_back(r); break;
    }
  }

  const fs::path dir = ws.prepared_dir();
  fs::create_directories(dir);
  result.filter_test_accuracy = std::numeric_limits<double>::quiet_NaN();
  json filter = nullptr;
  if (config.adversarial_filter) {
    if (train.empty() || test.empty()) {
      throw InvalidArgument("adversarial filtering needs non-empty train and test splits");
    }
    const LogRegModel model =
        train_claim_classifier(train, feature_space_options(config), logreg_options(config));
    std::map<std::string, ClaimVerdict, std::less<>> predictions;
    std::size_t correct = 0;
    for (const ExaminationRecord& r : test) {
      const ClaimVerdict v = predict_claim(model, r).verdict;
      predictions[record_id(r)] = v;
      correct += v == r.novelty_label ? 1 : 0;
    }
    result.filter_test_accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    for (const std::string& id : adversarial_filter(test, predictions, config.seed)) {
      assignment.at(id).adversarial = true;
      ++result.adversarial;
    }
    save_model(dir / "filter_model.json", model);
    filter = {{"model", "filter_model.json"},
              {"model_sha256", file_sha256(dir / "filter_model.json")},
              {"test_accuracy", result.filter_test_accuracy}};
  } else if (fs::exists(dir / "filter_model.json")) {
    fs::remove(dir / "filter_model.json");
  }

  std::vector<PriorArtDocument> used_docs;
  std::set<std::string> doc_ids;
  for (const ExaminationRecord& r : records) doc_ids.insert(r.prior_art_doc_id);
  for (const std::string& id : doc_ids) {
    auto it = docs.find(id);
    if (it == docs.end()) throw InvalidArgument("unknown document " + id);
    used_docs.push_back(it->second);
  }
  write_jsonl_as(dir / "records.jsonl", records);
  write_jsonl_as(dir / "docs.jsonl", used_docs);
  write_split(dir / "split.jsonl", assignment);

  result.manifest = {
      {"format", "novelty.prepare/1"},
      {"created_at", utc_timestamp()},
      {"config", config_to_json(config)},
      {"inputs",
       {{"records_sha256", file_sha256(records_in)}, {"docs_sha256", file_sha256(docs_in)}}},
      {"outputs",
       {{"records_sha256", file_sha256(dir / "records.jsonl")},
        {"docs_sha256", file_sha256(dir / "docs.jsonl")},
        {"split_sha256", file_sha256(dir / "split.jsonl")}}},
      {"counts",
       {{"input_records", result.input_records},
        {"stratified_records", result.stratified_records},
        {"train", result.train},
        {"val", result.val},
        {"test", result.test},
        {"adversarial", result.adversarial}}},
      {"filter", filter}};
  write_file(dir / "manifest.json", result.manifest.dump(2) + "\n");
  return result;
}

// --- run ----------------------------------------------------------------------

Clients make_clients(const Workspace& ws, const WorkbenchConfig& config,
                     const std::string& method) {
  Clients clients;
  RetryPolicy retry;
  retry.max_retries = config.client_max_retries;
  retry.initial_delay = std::chrono::milliseconds(config.client_initial_delay_ms);
  if (method == "embedding") {
    if (config.embedding_client == "hashing") {
      clients.embedding = std::make_shared<HashingEmbeddingClient>(config.embedding_dimensions);
    } else {
      HttpEmbeddingConfig c;
      c.base_url = config.embedding_url;
      c.model = config.embedding_model;
      if (const char* key = std::getenv("NW_EMBEDDING_API_KEY")) c.api_key = key;
      c.retry = retry;
      clients.embedding = std::make_shared<HttpEmbeddingClient>(c);
    }
  } else if (method == "single_step" || method == "hierarchical") {
    if (config.llm_client == "fixture") {
      if (config.llm_fixture.empty()) {
        throw InvalidArgument("llm_client=fixture needs llm_fixture to name a fixture file");
      }
      clients.examiner = std::make_shared<llm::FixtureClient>(
          llm::FixtureClient::Load(ws.resolve(config.llm_fixture)));
    } else {
      llm::ChatClientConfig c;
      c.base_url = config.llm_url;
      c.model = config.llm_model;
      c.retry = retry;
      clients.examiner = std::make_shared<llm::HttpChatClient>(
          llm::ChatClientConfig::FromEnvironment(c));
    }
  }
  return clients;
}

namespace {

json comparable(json manifest) {
  for (const char* key : {"created_at", "updated_at", "status", "written", "resumed", "predictions_sha256",
                          "failures"}) {
    manifest.erase(key);
  }
  return manifest;
}

json trace_json(const std::string& id, const llm::WorkflowTrace& t) {
  json steps = json::array();
  for (const llm::CallRecord& c : t.calls) {
    steps.push_back({{"step", c.step},
                     {"prompt_sha256", c.prompt_digest},
                     {"prompt_tokens", c.prompt_tokens},
                     {"completion_tokens", c.completion_tokens},
                     {"repair", c.repair},
                     {"error", c.error}});
  }
  return {{"record_id", id},
          {"calls", t.call_count()},
          {"prompt_tokens", t.prompt_tokens},
          {"completion_tokens", t.completion_tokens},
          {"dropped_ids", t.dropped_ids},
          {"errored_features", t.errored_features},
          {"notes", t.notes},
          {"steps", steps}};
}

// Rewrites a JSONL file with rows sorted by record_id.
void sort_jsonl_by_record(const fs::path& path) {
  if (!fs::exists(path)) return;
  std::vector<json> rows = read_jsonl(path);
  std::stable_sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
    return a.at("record_id").get<std::string>() < b.at("record_id").get<std::string>();
  });
  const fs::path tmp = fs::path(path.string() + ".tmp");
  write_jsonl(tmp, rows);
  fs::rename(tmp, path);
}

}  // namespace

RunSummary cmd_run(const Workspace& ws, const RunRequest& request,
                   const WorkbenchConfig& config, const Clients& clients) {
  if (std::find(kRunMethods.begin(), kRunMethods.end(), request.method) == kRunMethods.end()) {
    throw InvalidArgument("unknown method \"" + request.method + "\"");
  }
  const PreparedCorpus corpus = load_prepared(ws);
  const std::vector<const ExaminationRecord*> selected = select_split(corpus, request.split);
  const fs::path output = ws.resolve(request.output.empty()
                                         ? fs::path("runs") / (request.method + ".jsonl")
                                         : request.output);
  const fs::path manifest_path = manifest_path_for(output);
  const fs::path dir = ws.prepared_dir();

  // Logistic regression uses the prepared filter model, or trains one on
  // the train split when filtering was disabled.
  std::optional<LogRegModel> model;
  json model_info = nullptr;
  if (request.method == "logreg") {
    if (fs::exists(dir / "filter_model.json")) {
      model = load_model(dir / "filter_model.json");
      model_info = {{"source", "prepared/filter_model.json"},
                    {"sha256", file_sha256(dir / "filter_model.json")}};
    } else {
      std::vector<ExaminationRecord> train;
      for (const ExaminationRecord* r : select_split(corpus, "train")) train.push_back(*r);
      model = train_claim_classifier(train, feature_space_options(config), logreg_options(config));
      model_info = {{"source", "trained on train split"},
                    {"sha256", sha256_hex(json(*model).dump())}};
    }
  }
  if ((request.method == "single_step" || request.method == "hierarchical") &&
      !clients.examiner) {
    throw InvalidArgument("method " + request.method + " needs an examiner client");
  }
  if (request.method == "embedding" && !clients.embedding) {
    throw InvalidArgument("method embedding needs an embedding client");
  }

  RunSummary summary;
  summary.eligible = selected.size();
  json inputs = {{"records_sha256", file_sha256(dir / "records.jsonl")},
                 {"docs_sha256", file_sha256(dir / "docs.jsonl")},
                 {"split_sha256", file_sha256(dir / "split.jsonl")}};
  if ((request.method == "single_step" || request.method == "hierarchical") &&
      config.llm_client == "fixture") {
    inputs["llm_fixture_sha256"] = file_sha256(ws.resolve(config.llm_fixture));
  }
  json manifest = {{"format", kManifestFormat},
                   {"run_id", output.stem().string()},
                   {"method", request.method},
                   {"split", request.split},
                   {"seed", config.seed},
                   {"config", config_to_json(config)},
                   {"inputs", inputs},
                   {"model", model_info},
                   {"predictions", output.filename().string()},
                   {"records", selected.size()}};

  std::set<std::string> done;
  if (fs::exists(output)) {
    if (!fs::exists(manifest_path)) {
      throw InvalidArgument(output.string() + " exists without a manifest; refusing to append");
    }
    const json previous = json::parse(read_file(manifest_path));
    if (comparable(previous) != comparable(manifest)) {
      throw InvalidArgument("manifest of " + output.string() +
                            " does not match this run; choose another output");
    }
    manifest["created_at"] = previous.value("created_at", utc_timestamp());
    for (const json& row : read_jsonl(output)) done.insert(row.at("record_id").get<std::string>());
  } else {
    manifest["created_at"] = utc_timestamp();
    if (fs::exists(trace_path_for(output))) fs::remove(trace_path_for(output));
  }
  manifest["status"] = "running";
  write_file(manifest_path, manifest.dump(2) + "\n");

  std::vector<const ExaminationRecord*> todo;
  for (const ExaminationRecord* r : selected) {
    if (done.contains(record_id(*r))) {
      ++summary.resumed;
    } else {
      todo.push_back(r);
    }
  }

  EmbeddingCache cache;
  const llm::WorkflowConfig workflow =
      workflow_config(config, request.method == "single_step" ? llm::WorkflowMode::kSingleStep
                                                              : llm::WorkflowMode::kHierarchical);
  RandomExaminerOptions random_options;
  random_options.expected_passages = config.random_expected_passages;

  const std::size_t chunk = std::max<std::size_t>(16, config.jobs * 4);
  for (std::size_t begin = 0; begin < todo.size(); begin += chunk) {
    const std::size_t end = std::min(todo.size(), begin + chunk);
    const std::size_t n = end - begin;
    std::vector<std::optional<ExaminationResult>> results(n);
    std::vector<std::optional<json>> traces(n);
    std::vector<std::string> errors(n);
    parallel_for(n, config.jobs, [&](std::size_t i) {
      const ExaminationRecord& record = *todo[begin + i];
      try {
        const PriorArtDocument& doc = doc_for(corpus.docs, record);
        if (request.method == "random") {
          results[i] = random_examiner(record, doc, config.seed, random_options);
        } else if (request.method == "rouge") {
          results[i] = rouge_retrieval_examiner(record, doc, config.rouge_threshold);
        } else if (request.method == "embedding") {
          results[i] = embedding_retrieval_examiner(record, doc, *clients.embedding, cache,
                                                    config.embedding_threshold);
        } else if (request.method == "logreg") {
          results[i] = logreg_examiner(record, *model);
        } else {
          llm::WorkflowOutput out = llm::examine(record, doc, *clients.examiner, workflow);
          traces[i] = trace_json(out.result.record_id, out.trace);
          results[i] = std::move(out.result);
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    std::vector<json> rows, trace_rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (results[i]) {
        rows.emplace_back(*results[i]);
        ++summary.written;
      } else {
        summary.failures.emplace_back(record_id(*todo[begin + i]), errors[i]);
      }
      if (traces[i]) trace_rows.push_back(std::move(*traces[i]));
    }
    append_jsonl(output, rows);
    if (!trace_rows.empty()) append_jsonl(trace_path_for(output), trace_rows);
  }
  if (!fs::exists(output)) write_file(output, "");
  sort_jsonl_by_record(output);
  sort_jsonl_by_record(trace_path_for(output));

  json failures = json::array();
  for (const auto& [id, error] : summary.failures) {
    failures.push_back({{"record_id", id}, {"error", error}});
  }
  manifest["status"] = summary.failures.empty() ? "complete" : "complete_with_skips";
  manifest["updated_at"] = utc_timestamp();
  manifest["written"] = summary.written + summary.resumed;
  manifest["resumed"] = summary.resumed;
  manifest["failures"] = failures;
  manifest["predictions_sha256"] = file_sha256(output);
  write_file(manifest_path, manifest.dump(2) + "\n");
  summary.manifest = manifest;
  return summary;
}

// --- eval ---------------------------------------------------------------------

namespace {

json scores_json(const RetrievalScores& s) { return json(s); }

json prf_json(const Prf& p) { return {{"p", p.p}, {"r", p.r}, {"f1", p.f1}}; }

json subset_json(const SubsetReport& s) {
  return {{"name", s.name},
          {"counts",
           {{"records", s.counts.records},
            {"retrieval", s.counts.retrieval},
            {"retrieval_features", s.counts.retrieval_features},
            {"nfi", s.counts.nfi},
            {"missing_predictions", s.counts.missing_predictions}}},
          {"claim_level", scores_json(s.claim_level)},
          {"feature_level", scores_json(s.feature_level)},
          {"nfi", prf_json(s.nfi)},
          {"classification",
           {{"predicted_novel", s.classification.predicted_novel_fraction},
            {"accuracy", s.classification.accuracy},
            {"macro_f1", s.classification.macro_f1}}}};
}

std::string pct(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string row(const std::vector<std::string>& cells, const std::vector<std::size_t>& widths) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i == 0) {
      out += cells[i] + std::string(widths[i] > cells[i].size() ? widths[i] - cells[i].size() : 0, ' ');
    } else {
      out += " " + pad(cells[i], widths[i]);
    }
  }
  return out + "\n";
}

std::map<std::string, ExaminationResult, std::less<>> load_results(const fs::path& path) {
  std::map<std::string, ExaminationResult, std::less<>> out;
  for (ExaminationResult& r : read_results(path)) {
    const std::string id = r.record_id;
    if (!out.emplace(id, std::move(r)).second) {
      throw ParseError("duplicate prediction for " + id, path.string());
    }
  }
  return out;
}

}  // namespace

json eval_report_json(const EvalReport& report) {
  json records = json::array();
  for (const RecordEval& e : report.records) {
    json r = {{"record_id", e.record_id},
              {"label", to_string(e.label)},
              {"predicted", to_string(e.predicted)}};
    r["claim_level"] = e.claim_level ? scores_json(*e.claim_level) : json(nullptr);
    r["feature_level"] = e.feature_level ? scores_json(*e.feature_level) : json(nullptr);
    r["scored_features"] = e.scored_features;
    r["nfi"] = e.nfi ? prf_json(*e.nfi) : json(nullptr);
    records.push_back(std::move(r));
  }
  return {{"full", subset_json(report.full)},
          {"adversarial", report.adversarial ? subset_json(*report.adversarial) : json(nullptr)},
          {"missing_record_ids", report.missing_record_ids},
          {"claim_ranking_order", report.claim_ranking_order},
          {"records", records}};
}

std::string render_eval_tables(const std::string& label, const EvalReport& report) {
  std::string out;
  const SubsetReport& f = report.full;
  const std::size_t lw = std::max<std::size_t>(label.size(), 6);
  std::vector<std::size_t> w1(18, 6);
  w1[0] = lw;
  out += "Retrieval and novel feature identification (%), " +
         std::to_string(f.counts.retrieval) + " not-novel / " + std::to_string(f.counts.nfi) +
         " novel records\n";
  out += row({"", "claim", "", "", "", "", "", "", "feat", "", "", "", "", "", "", "NFI", "", ""}, w1);
  out += row({"Method", "P", "~P", "R", "~R", "F1", "~F1", "nDCG", "P", "~P", "R", "~R", "F1",
              "~F1", "nDCG", "P", "R", "F1"},
             w1);
  auto block = [](const RetrievalScores& s) {
    return std::vector<std::string>{pct(s.p),  pct(s.soft_p),  pct(s.r),   pct(s.soft_r),
                                    pct(s.f1), pct(s.soft_f1), pct(s.ndcg)};
  };
  std::vector<std::string> cells = {label};
  for (auto& c : block(f.claim_level)) cells.push_back(c);
  for (auto& c : block(f.feature_level)) cells.push_back(c);
  for (auto& c : {pct(f.nfi.p), pct(f.nfi.r), pct(f.nfi.f1)}) cells.push_back(c);
  out += row(cells, w1);

  out += "\nClassification (%), test";
  if (report.adversarial) out += " / adversarial";
  out += " (" + std::to_string(f.counts.records);
  if (report.adversarial) out += " / " + std::to_string(report.adversarial->counts.records);
  out += " records)\n";
  auto pair = [&](double test, std::optional<double> adv) {
    return adv ? pct(test) + " / " + pct(*adv) : pct(test);
  };
  const auto& a = report.adversarial;
  std::vector<std::size_t> w2 = {lw, 16, 16, 16};
  out += row({"Method", "Predicted Novel", "Accuracy", "Macro F1"}, w2);
  out += row({label,
              pair(f.classification.predicted_novel_fraction,
                   a ? std::optional(a->classification.predicted_novel_fraction) : std::nullopt),
              pair(f.classification.accuracy,
                   a ? std::optional(a->classification.accuracy) : std::nullopt),
              pair(f.classification.macro_f1,
                   a ? std::optional(a->classification.macro_f1) : std::nullopt)},
             w2);
  if (!report.missing_record_ids.empty()) {
    out += "\nwarning: " + std::to_string(report.missing_record_ids.size()) +
           " records of the split have no prediction\n";
  }
  return out;
}

EvalReport cmd_eval(const Workspace& ws, const EvalRequest& request,
                    const WorkbenchConfig& config) {
  const PreparedCorpus corpus = load_prepared(ws);
  std::vector<ExaminationRecord> records;
  std::set<std::string> adversarial;
  for (const ExaminationRecord* r : select_split(corpus, request.split)) {
    records.push_back(*r);
    if (corpus.split.at(record_id(*r)).adversarial) adversarial.insert(record_id(*r));
  }
  const fs::path predictions = ws.resolve(request.predictions);
  const EvalReport report =
      evaluate(records, corpus.docs, load_results(predictions), adversarial, eval_options(config));

  const std::string label = request.label.empty() ? predictions.stem().string() : request.label;
  const fs::path prefix = ws.resolve(
      request.out_prefix.empty() ? fs::path("reports") / (predictions.stem().string() + ".eval")
                                 : request.out_prefix);
  json j = eval_report_json(report);
  j["predictions"] = predictions.string();
  j["predictions_sha256"] = file_sha256(predictions);
  j["split"] = request.split;
  j["config"] = config_to_json(config);
  write_file(prefix.string() + ".json", j.dump(2) + "\n");
  write_file(prefix.string() + ".txt", render_eval_tables(label, report));
  return report;
}

// --- agree --------------------------------------------------------------------

std::string render_kappa(const std::string& title, const KappaMatrix& matrix) {
  std::size_t w = 7;
  for (const std::string& n : matrix.names) w = std::max(w, n.size());
  std::vector<std::size_t> widths(matrix.names.size() + 1, w);
  std::string out = title + "\n";
  std::vector<std::string> header = {""};
  header.insert(header.end(), matrix.names.begin(), matrix.names.end());
  out += row(header, widths);
  for (std::size_t i = 0; i < matrix.names.size(); ++i) {
    std::vector<std::string> cells = {matrix.names[i]};
    for (double v : matrix.values[i]) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.3f", v);
      cells.emplace_back(buf);
    }
    out += row(cells, widths);
  }
  return out;
}

AgreeResult cmd_agree(const Workspace& ws, const AgreeRequest& request) {
  if (request.predictions.size() < 2) {
    throw InvalidArgument("agreement needs at least two prediction files");
  }
  const PreparedCorpus corpus = load_prepared(ws);
  std::vector<std::string> ids;
  std::set<std::string> in_split;
  for (const ExaminationRecord* r : select_split(corpus, request.split)) {
    ids.push_back(record_id(*r));
    in_split.insert(ids.back());
  }

  std::vector<NamedRun> test_runs, adv_runs;
  std::optional<std::set<std::string>> reference;
  fs::path reference_path;
  for (const fs::path& p : request.predictions) {
    const fs::path path = ws.resolve(p);
    const auto results = load_results(path);
    std::set<std::string> covered;
    for (const auto& [id, r] : results) {
      if (in_split.contains(id)) covered.insert(id);
    }
    if (covered.empty()) {
      throw InvalidArgument(path.string() + " has no predictions for split " + request.split);
    }
    if (!reference) {
      reference = covered;
      reference_path = path;
    } else if (covered != *reference) {
      throw InvalidArgument("record sets differ between " + reference_path.string() + " and " +
                            path.string());
    }
    NamedRun test{path.stem().string(), {}}, adv{path.stem().string(), {}};
    for (const std::string& id : ids) {
      if (!covered.contains(id)) continue;
      test.second.push_back(results.find(id)->second.claim_verdict);
      if (corpus.split.at(id).adversarial) adv.second.push_back(results.find(id)->second.claim_verdict);
    }
    test_runs.push_back(std::move(test));
    adv_runs.push_back(std::move(adv));
  }

  AgreeResult result;
  result.test = agreement_matrix(test_runs);
  if (!adv_runs.front().second.empty()) result.adversarial = agreement_matrix(adv_runs);

  auto matrix_json = [](const KappaMatrix& m) {
    return json{{"names", m.names}, {"kappa", m.values}};
  };
  json j = {{"split", request.split},
            {"records", reference->size()},
            {"test", matrix_json(result.test)},
            {"adversarial", result.adversarial ? matrix_json(*result.adversarial) : json(nullptr)}};
  std::string text = render_kappa("Cohen's kappa, " + request.split, result.test);
  if (result.adversarial) {
    text += "\n" + render_kappa("Cohen's kappa, adversarial", *result.adversarial);
  }
  const fs::path prefix =
      ws.resolve(request.out_prefix.empty() ? fs::path("reports") / "agreement" : request.out_prefix);
  write_file(prefix.string() + ".json", j.dump(2) + "\n");
  write_file(prefix.string() + ".txt", text);
  return result;
}

}  // namespace novelty
