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

// nw: command-line front end for the workbench.
//
//   nw [--workspace DIR] [--config FILE] [--set key=value]... <command> ...
//
// Exit codes: 0 success, 1 error, 2 run finished with skipped records.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "novelty/config.h"
#include "novelty/errors.h"
#include "novelty/harness.h"

namespace {

using namespace novelty;
namespace fs = std::filesystem;

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novelty workbench: corpus preparation, examiners and evaluation"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  std::string workspace = ".";
  std::string config_file;
  std::vector<std::string> overrides;
  app.add_option("--workspace,-w", workspace, "Workspace root")->capture_default_str();
  app.add_option("--config,-c", config_file, "JSON config file");
  app.add_option("--set", overrides, "Config override key=value (repeatable)");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and copy it into corpus/");
  std::string records_in, docs_in;
  ingest->add_option("--records", records_in, "Records JSONL")->required();
  ingest->add_option("--docs", docs_in, "Prior-art documents JSONL")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  std::uint64_t synth_seed = 0;
  bool seed_given = false;
  std::size_t applications = 100;
  std::string synth_out = "synthetic";
  SynthOptions synth_opts;
  synth->add_option("--seed", synth_seed, "Generator seed (defaults to config seed)")
      ->each([&](const std::string&) { seed_given = true; });
  synth->add_option("--applications,-n", applications, "Number of applications")
      ->capture_default_str();
  synth->add_option("--out-dir", synth_out, "Output directory")->capture_default_str();
  synth->add_flag("--length-skew", synth_opts.length_skew,
                  "Granted claims receive many inserted features");
  synth->add_flag("--numerals", synth_opts.reference_numerals,
                  "Add reference numerals to granted claims");

  // prepare
  auto* prepare = app.add_subcommand("prepare", "Strip numerals, stratify, split, filter");

  // run
  auto* run = app.add_subcommand("run", "Run an examiner over a split");
  RunRequest run_req;
  std::string run_out;
  run->add_option("--method", run_req.method, "Examiner method")->required();
  run->add_option("--split", run_req.split, "train|val|test|all")->capture_default_str();
  run->add_option("--out", run_out, "Prediction file (default runs/<method>.jsonl)");

  // eval
  auto* eval = app.add_subcommand("eval", "Score a prediction file");
  EvalRequest eval_req;
  std::string eval_pred, eval_prefix;
  eval->add_option("--predictions", eval_pred, "Prediction JSONL")->required();
  eval->add_option("--split", eval_req.split, "train|val|test|all")->capture_default_str();
  eval->add_option("--out-prefix", eval_prefix, "Report prefix (default reports/<stem>.eval)");
  eval->add_option("--label", eval_req.label, "Row label in tables");

  // agree
  auto* agree = app.add_subcommand("agree", "Pairwise Cohen's kappa between runs");
  AgreeRequest agree_req;
  std::vector<std::string> agree_preds;
  std::string agree_prefix;
  agree->add_option("--predictions", agree_preds, "Two or more prediction files")->required();
  agree->add_option("--split", agree_req.split, "train|val|test|all")->capture_default_str();
  agree->add_option("--out-prefix", agree_prefix, "Report prefix (default reports/agreement)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    const Workspace ws(workspace);
    const WorkbenchConfig config = load_config(config_file, process_environment(), overrides);

    if (*ingest) {
      const IngestResult r = cmd_ingest(ws, records_in, docs_in);
      std::cout << r.records << " records, " << r.documents << " documents, "
                << r.violations.size() << " violations\n";
      for (const auto& v : r.violations) {
        std::cerr << v.record_id << ": " << v.violation.code << ": " << v.violation.message
                  << "\n";
      }
      return r.accepted ? kExitOk : kExitError;
    }
    if (*synth) {
      const SynthResult r =
          cmd_synth(ws, seed_given ? synth_seed : config.seed, applications, synth_opts, synth_out);
      std::cout << "wrote " << r.records << " records to " << r.records_path.string() << " and "
                << r.documents << " documents to " << r.docs_path.string() << "\n";
      return kExitOk;
    }
    if (*prepare) {
      print_json(cmd_prepare(ws, config).manifest);
      return kExitOk;
    }
    if (*run) {
      run_req.output = run_out;
      const Clients clients = make_clients(ws, config, run_req.method);
      const RunSummary s = cmd_run(ws, run_req, config, clients);
      std::cout << s.written << " written, " << s.resumed << " resumed, " << s.failures.size()
                << " failed of " << s.eligible << "\n";
      for (const auto& [id, err] : s.failures) std::cerr << id << ": " << err << "\n";
      return s.exit_code();
    }
    if (*eval) {
      eval_req.predictions = eval_pred;
      eval_req.out_prefix = eval_prefix;
      if (eval_req.label.empty()) eval_req.label = fs::path(eval_pred).stem().string();
      const EvalReport report = cmd_eval(ws, eval_req, config);
      std::cout << render_eval_tables(eval_req.label, report);
      return kExitOk;
    }
    if (*agree) {
      for (const auto& p : agree_preds) agree_req.predictions.emplace_back(p);
      agree_req.out_prefix = agree_prefix;
      const AgreeResult r = cmd_agree(ws, agree_req);
      std::cout << render_kappa("Cohen's kappa, " + agree_req.split, r.test);
      if (r.adversarial) std::cout << render_kappa("Cohen's kappa, adversarial", *r.adversarial);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "nw: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "nw: unexpected error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
