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

// Run orchestration behind the `nw` command line: ingest, synth, prepare,
// run, eval and agree. All paths are resolved against a workspace root.
//
// Workspace layout:
//   corpus/records.jsonl, corpus/docs.jsonl, corpus/validation_report.json
//   prepared/records.jsonl, prepared/docs.jsonl, prepared/split.jsonl,
//   prepared/filter_model.json, prepared/manifest.json
//   runs/<name>.jsonl (+ .manifest.json), reports/...

#ifndef NOVELTY_HARNESS_H_
#define NOVELTY_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty/config.h"
#include "novelty/dataset_ops.h"
#include "novelty/embedding.h"
#include "novelty/llm/client.h"
#include "novelty/metrics.h"
#include "novelty/synthetic.h"

namespace novelty {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitWithSkips = 2 };

class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  // Relative paths resolve against the root; absolute paths pass through.
  std::filesystem::path resolve(const std::filesystem::path& path) const;

  std::filesystem::path corpus_dir() const { return root_ / "corpus"; }
  std::filesystem::path prepared_dir() const { return root_ / "prepared"; }
  std::filesystem::path runs_dir() const { return root_ / "runs"; }
  std::filesystem::path reports_dir() const { return root_ / "reports"; }

 private:
  std::filesystem::path root_;
};

// --- ingest -------------------------------------------------------------------

struct RecordViolation {
  std::string record_id;
  Violation violation;
};

struct IngestResult {
  std::size_t records = 0;
  std::size_t documents = 0;
  std::vector<RecordViolation> violations;
  bool accepted = false;
};

// Validates every record against its document and, when clean, copies the
// corpus into corpus/. The validation report is written either way.
IngestResult cmd_ingest(const Workspace& ws, const std::filesystem::path& records_path,
                        const std::filesystem::path& docs_path);

// --- synth --------------------------------------------------------------------

struct SynthResult {
  std::filesystem::path records_path;
  std::filesystem::path docs_path;
  std::size_t records = 0;
  std::size_t documents = 0;
};

SynthResult cmd_synth(const Workspace& ws, std::uint64_t seed, std::size_t n_applications,
                      const SynthOptions& options, const std::filesystem::path& out_dir);

// --- prepare ------------------------------------------------------------------

struct PrepareResult {
  std::size_t input_records = 0;
  std::size_t stratified_records = 0;
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  std::size_t adversarial = 0;
  double filter_test_accuracy = 0.0;  // NaN when the filter was skipped
  nlohmann::json manifest;
};

// strip numerals -> stratify -> split -> (optional) claim-only logistic
// regression on train and adversarial filtering of test.
PrepareResult cmd_prepare(const Workspace& ws, const WorkbenchConfig& config);

SplitAssignment read_split(const std::filesystem::path& path);
void write_split(const std::filesystem::path& path, const SplitAssignment& split);

// --- run ----------------------------------------------------------------------

inline const std::vector<std::string> kRunMethods = {
    "random", "rouge", "embedding", "logreg", "single_step", "hierarchical"};

struct Clients {
  std::shared_ptr<llm::ExaminerClient> examiner;
  std::shared_ptr<EmbeddingClient> embedding;
};

// Builds clients from the config (fixture/http examiner, hashing/http
// embedding). Clients for methods that do not need them stay null.
Clients make_clients(const Workspace& ws, const WorkbenchConfig& config,
                     const std::string& method);

struct RunRequest {
  std::string method;
  std::string split = "test";  // "train" | "val" | "test" | "all"
  std::filesystem::path output;  // prediction file; manifest goes next to it
};

struct RunSummary {
  std::size_t eligible = 0;
  std::size_t written = 0;
  std::size_t resumed = 0;  // already present and skipped
  std::vector<std::pair<std::string, std::string>> failures;  // record id, error
  nlohmann::json manifest;

  int exit_code() const { return failures.empty() ? kExitOk : kExitWithSkips; }
};

// Streams one result per record of the split to the prediction file, in
// record-id order. A re-run with an identical manifest resumes; a mismatching
// manifest raises InvalidArgument.
RunSummary cmd_run(const Workspace& ws, const RunRequest& request,
                   const WorkbenchConfig& config, const Clients& clients);

// --- eval ---------------------------------------------------------------------

struct EvalRequest {
  std::filesystem::path predictions;
  std::string split = "test";
  std::filesystem::path out_prefix;  // writes <prefix>.json and <prefix>.txt
  std::string label;                 // row label in rendered tables
};

EvalReport cmd_eval(const Workspace& ws, const EvalRequest& request,
                    const WorkbenchConfig& config);

nlohmann::json eval_report_json(const EvalReport& report);
// Retrieval/NFI table (claim-level and feature-level blocks, soft columns
// marked with ~) and classification table with "test / adversarial" cells.
std::string render_eval_tables(const std::string& label, const EvalReport& report);

// --- agree --------------------------------------------------------------------

struct AgreeRequest {
  std::vector<std::filesystem::path> predictions;
  std::string split = "test";
  std::filesystem::path out_prefix;
};

struct AgreeResult {
  KappaMatrix test;
  std::optional<KappaMatrix> adversarial;
};

// Throws InvalidArgument with fewer than two files or differing record sets.
AgreeResult cmd_agree(const Workspace& ws, const AgreeRequest& request);

std::string render_kappa(const std::string& title, const KappaMatrix& matrix);

}  // namespace novelty

#endif  // NOVELTY_HARNESS_H_
