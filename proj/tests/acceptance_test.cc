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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Criteria run in order; pass a list of
// numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "novelty/baselines.h"
#include "novelty/claim_text.h"
#include "novelty/config.h"
#include "novelty/dataset_ops.h"
#include "novelty/digest.h"
#include "novelty/harness.h"
#include "novelty/llm/workflows.h"
#include "novelty/metrics.h"
#include "novelty/record_io.h"
#include "novelty/synthetic.h"
#include "novelty/textsim.h"
#include "novelty/utf8.h"
#include "oracles.h"
#include "test_util.h"

namespace {

using namespace novelty;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using testutil::par;

// Collects failed expectations for one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << got << ", want " << want;
    expect(std::abs(got - want) <= tol, s.str());
  }
  bool ok() const { return !failed_; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }
  std::string note;

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// --- 1 -------------------------------------------------------------------------

void metric_oracle_equivalence(Checker& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  const std::vector<std::string> words = {"lever", "spring", "housing", "pin", "rotor",
                                          "seal", "gap", "the", "a", "shaft", "frame"};
  std::vector<std::string> texts;
  for (int i = 0; i < 20; ++i) {
    std::string t;
    for (std::size_t w = 0; w < 2 + rng() % 8; ++w) t += words[rng() % words.size()] + " ";
    texts.push_back(t);
  }
  for (int t = 0; t < 1000; ++t) {
    std::set<PassageId> pred, gold;
    std::vector<PassageId> ranked;
    const std::size_t np = rng() % 6, ng = rng() % 6;
    for (std::size_t i = 0; i < np; ++i) {
      const PassageId id = par(1 + static_cast<int>(rng() % texts.size()));
      if (pred.insert(id).second) ranked.push_back(id);
    }
    for (std::size_t i = 0; i < ng; ++i) gold.insert(par(1 + static_cast<int>(rng() % texts.size())));
    const Prf h = set_prf(pred, gold);
    const oracle::Prf oh = oracle::set_prf(pred, gold);
    c.near(h.p, oh.p, 1e-9, "set_prf p");
    c.near(h.r, oh.r, 1e-9, "set_prf r");
    c.near(h.f1, oh.f1, 1e-9, "set_prf f1");
    std::vector<std::string> pt, gt;
    for (const auto& id : pred) pt.push_back(texts[static_cast<std::size_t>(id.number() - 1)]);
    for (const auto& id : gold) gt.push_back(texts[static_cast<std::size_t>(id.number() - 1)]);
    const Prf s = soft_prf(pt, gt);
    const oracle::Prf os = oracle::soft_prf(pt, gt);
    c.near(s.p, os.p, 1e-9, "soft_prf p");
    c.near(s.r, os.r, 1e-9, "soft_prf r");
    c.near(s.f1, os.f1, 1e-9, "soft_prf f1");
    if (!gold.empty()) c.near(ndcg(ranked, gold), oracle::ndcg(ranked, gold), 1e-9, "ndcg");
  }
  const double secs = seconds_since(start);
  c.expect(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  c.note = "1000 pairs in " + std::to_string(secs).substr(0, 5) + " s";
}

// --- 2 -------------------------------------------------------------------------

void soft_metric_anchors(Checker& c) {
  const Prf s = soft_prf_from_similarity({{0.2, 0.6}}, 1, 2);
  c.expect(s.p == 0.6, "~p exactly 0.6");
  c.expect(s.r == 0.4, "~r exactly 0.4");

  PriorArtDocument doc = testutil::make_doc("D", {"a lever pivots", "a spring returns", "a pin"});
  ExaminationRecord r;
  r.application_id = "A";
  r.claim_text = "A tool comprising: a lever; a spring.";
  r.prior_art_doc_id = "D";
  r.gold_segmentation = testutil::literal_segmentation(r.claim_text, {"A tool comprising:", "a lever", "a spring"});
  r.gold_references = FeatureReferences{{PassageId::Abstract()}, {par(1), par(3)}, {par(2)}};
  ExaminationResult res;
  res.record_id = record_id(r);
  res.predicted_segmentation = *r.gold_segmentation;
  for (const auto& refs : *r.gold_references) {
    FeatureOutcome o;
    o.ranked_passages = canonical_passage_order(refs);
    res.features.push_back(o);
  }
  const auto feature = eval_retrieval_feature_level(res, r, doc);
  const auto claim = eval_retrieval_claim_level(res, r, doc);
  for (const RetrievalScores& x : {*feature.mean, claim}) {
    for (double v : {x.p, x.soft_p, x.r, x.soft_r, x.f1, x.soft_f1, x.ndcg}) {
      c.expect(v == 1.0, "identity field != 1");
    }
  }
}

// --- 3 -------------------------------------------------------------------------

void diff_round_trip(Checker& c) {
  std::mt19937_64 rng(303);
  const std::string alphabet = "abcdefgh ;,.";
  for (int t = 0; t < 1000; ++t) {
    const std::string old_text = testutil::random_string(rng, rng() % 401, alphabet);
    std::string new_text = old_text;
    const std::size_t inserts = 1 + rng() % 5;
    for (std::size_t k = 0; k < inserts && new_text.size() < 500; ++k) {
      const std::size_t at = rng() % (new_text.size() + 1);
      const std::size_t len = std::min<std::size_t>(1 + rng() % 20, 500 - new_text.size());
      new_text.insert(at, testutil::random_string(rng, len, alphabet));
    }
    const SpanSet spans = diff_added_spans(old_text, new_text);
    std::string kept;
    std::size_t next = 0;
    for (const Span& s : spans.ranges()) {
      kept += new_text.substr(next, s.start - next);
      next = s.end;
    }
    kept += new_text.substr(next);
    c.expect(kept == old_text, "insertion-only case " + std::to_string(t));
    c.expect(spans.total_length() == new_text.size() - old_text.size(),
             "inserted length case " + std::to_string(t));
  }
  for (int t = 0; t < 1000; ++t) {
    const std::string a = testutil::random_string(rng, rng() % 60, "abcd ");
    std::string b = a;
    for (std::size_t k = 0; k < 1 + rng() % 6; ++k) {
      const std::size_t op = rng() % 3;
      const std::size_t at = b.empty() ? 0 : rng() % b.size();
      if (op == 0 || b.empty()) {
        b.insert(at, testutil::random_string(rng, 1 + rng() % 4, "abcdx"));
      } else if (op == 1) {
        b.erase(at, 1 + rng() % 3);
      } else {
        b[at] = "abcdx"[rng() % 5];
      }
    }
    const auto counts = oracle::canonical_backtrace(a, b);
    c.expect(diff_added_spans(a, b).total_length() == counts.inserts + counts.substitutes,
             "mixed case " + std::to_string(t));
  }
}

// --- 4 -------------------------------------------------------------------------

void reference_parsing(Checker& c) {
  const auto fine = parse_reference_string("paragraphs 10-13, 16-18, 20");
  const auto coarse = parse_reference_string("paragraphs 10-20");
  c.expect(fine.size() == 8, "fine expansion size " + std::to_string(fine.size()));
  c.expect(coarse.size() == 11, "coarse expansion size " + std::to_string(coarse.size()));
  c.expect(citation_overlap(coarse, fine) == 8.0 / 11.0, "overlap exactly 8/11");
}

// --- 5 -------------------------------------------------------------------------

void stratification_balance(Checker& c) {
  SynthOptions opt;
  opt.length_skew = true;
  const auto corpus = generate_synthetic_corpus(505, 1200, opt);
  c.expect(corpus.records.size() >= 2000, "corpus size");
  const auto kept = stratify_balance(corpus.records, 100, 7);
  std::map<std::string, const ExaminationRecord*> idx;
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& r : corpus.records) {
    idx[record_id(r)] = &r;
    lo = std::min(lo, claim_length(r));
    hi = std::max(hi, claim_length(r));
  }
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> bins;
  std::size_t novel = 0;
  std::vector<ExaminationRecord> retained;
  for (const auto& id : kept) {
    const ExaminationRecord& r = *idx.at(id);
    retained.push_back(r);
    const bool is_novel = r.novelty_label == NoveltyLabel::kNovel;
    novel += is_novel;
    auto& b = bins[length_bin(claim_length(r), lo, hi, 100)];
    (is_novel ? b.first : b.second)++;
  }
  for (const auto& [bin, counts] : bins) {
    c.expect(counts.first == counts.second, "bin " + std::to_string(bin) + " unbalanced");
  }
  c.expect(!kept.empty() && 2 * novel == kept.size(), "global 50/50");

  const SplitAssignment s = split(retained, kDefaultSplitRatios, 11);
  c.expect(s.size() == retained.size(), "split is a partition");
  std::map<std::string, std::set<Split>> app_splits;
  for (const auto& r : retained) app_splits[r.application_id].insert(s.at(record_id(r)).split);
  std::array<std::size_t, 3> apps{};
  for (const auto& [app, splits] : app_splits) {
    c.expect(splits.size() == 1, "application " + app + " straddles splits");
    apps[static_cast<std::size_t>(*splits.begin())]++;
  }
  // Largest remainder, computed independently.
  const std::size_t n = app_splits.size();
  std::array<std::size_t, 3> want{};
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t given = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double q = kDefaultSplitRatios[k] * static_cast<double>(n);
    want[k] = static_cast<std::size_t>(std::floor(q));
    given += want[k];
    rem.emplace_back(-(q - std::floor(q)), k);
  }
  std::stable_sort(rem.begin(), rem.end());
  for (std::size_t k = 0; given < n; ++k, ++given) want[rem[k].second]++;
  c.expect(apps == want, "application counts " + std::to_string(apps[0]) + "/" +
                             std::to_string(apps[1]) + "/" + std::to_string(apps[2]));
  c.note = std::to_string(kept.size()) + " of " + std::to_string(corpus.records.size()) +
           " records kept, " + std::to_string(bins.size()) + " bins";
}

// --- 6 -------------------------------------------------------------------------

double accuracy(const LogRegModel& model, const std::vector<ExaminationRecord>& records,
                std::map<std::string, ClaimVerdict, std::less<>>* predictions = nullptr) {
  std::size_t right = 0;
  for (const auto& r : records) {
    const ClaimVerdict v = predict_claim(model, r).verdict;
    right += v == r.novelty_label;
    if (predictions) (*predictions)[record_id(r)] = v;
  }
  return records.empty() ? 0.0 : static_cast<double>(right) / static_cast<double>(records.size());
}

void by_split(const std::vector<ExaminationRecord>& records, const SplitAssignment& s,
              std::vector<ExaminationRecord>& train, std::vector<ExaminationRecord>& test) {
  for (const auto& r : records) {
    const Split k = s.at(record_id(r)).split;
    if (k == Split::kTrain) train.push_back(r);
    if (k == Split::kTest) test.push_back(r);
  }
}

void spurious_correlation(Checker& c) {
  const auto start = Clock::now();
  SynthOptions opt;
  opt.length_skew = true;
  const auto corpus = generate_synthetic_corpus(606, 8000, opt);

  std::vector<ExaminationRecord> train, test;
  by_split(corpus.records, split(corpus.records, kDefaultSplitRatios, 1), train, test);
  const LogRegModel skewed = train_claim_classifier(train);
  const double before = accuracy(skewed, test);
  c.expect(before > 0.9, "accuracy before stratification " + std::to_string(before));

  const auto kept_ids = stratify_balance(corpus.records, 100, 2);
  const std::set<std::string> kept(kept_ids.begin(), kept_ids.end());
  std::vector<ExaminationRecord> balanced;
  for (const auto& r : corpus.records) {
    if (kept.contains(record_id(r))) balanced.push_back(r);
  }
  std::vector<ExaminationRecord> btrain, btest;
  by_split(balanced, split(balanced, kDefaultSplitRatios, 3), btrain, btest);
  const LogRegModel filter = train_claim_classifier(btrain);
  std::map<std::string, ClaimVerdict, std::less<>> predictions;
  const double after = accuracy(filter, btest, &predictions);
  c.expect(after <= 0.55, "accuracy after stratification " + std::to_string(after));

  const auto adv_ids = adversarial_filter(btest, predictions, 4);
  const std::set<std::string> adv(adv_ids.begin(), adv_ids.end());
  std::vector<ExaminationRecord> adversarial;
  std::size_t novel = 0;
  for (const auto& r : btest) {
    if (!adv.contains(record_id(r))) continue;
    adversarial.push_back(r);
    novel += r.novelty_label == NoveltyLabel::kNovel;
  }
  c.expect(!adversarial.empty(), "adversarial subset empty");
  c.expect(2 * novel == adversarial.size(), "adversarial subset unbalanced");
  c.expect(accuracy(filter, adversarial) == 0.0, "filter accuracy on adversarial subset");
  const double secs = seconds_since(start);
  c.expect(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream note;
  note.precision(3);
  note << "test acc " << before << " (n=" << test.size() << "), stratified " << after
       << " (n=" << btest.size() << "), adversarial n=" << adversarial.size() << ", "
       << secs << " s";
  c.note = note.str();
}

// --- 7 -------------------------------------------------------------------------

void classification_agreement(Checker& c) {
  constexpr NoveltyLabel N = NoveltyLabel::kNovel, NN = NoveltyLabel::kNotNovel;
  const auto s = eval_classification({N, NN, NN, NN}, {N, N, NN, NN});
  c.near(s.macro_f1, (2.0 / 3.0 + 0.8) / 2.0, 1e-12, "worked macro F1");
  const std::vector<NoveltyLabel> a = {N, N, NN, NN};
  c.expect(cohens_kappa(a, a) == 1.0, "kappa identical");
  c.expect(cohens_kappa(a, {NN, NN, N, N}) == -1.0, "kappa complementary");
  c.expect(cohens_kappa(a, {N, NN, N, NN}) == 0.0, "kappa chance");

  // Three runs stored to disk and read back.
  testutil::TempDir dir;
  const auto corpus = generate_synthetic_corpus(707, 50);
  const auto docs = index_documents(corpus.documents);
  std::vector<NamedRun> runs;
  for (std::uint64_t seed : {1, 2, 3}) {
    std::vector<ExaminationResult> results;
    for (const auto& r : corpus.records) {
      results.push_back(random_examiner(r, docs.at(r.prior_art_doc_id), seed));
    }
    const fs::path path = dir.path() / ("run" + std::to_string(seed) + ".jsonl");
    write_jsonl_as(path, results);
    std::vector<ClaimVerdict> verdicts;
    for (const auto& res : read_results(path)) verdicts.push_back(res.claim_verdict);
    runs.emplace_back("run" + std::to_string(seed), verdicts);
  }
  const KappaMatrix m = agreement_matrix(runs);
  for (std::size_t i = 0; i < 3; ++i) {
    c.expect(m.values[i][i] == 1.0, "unit diagonal");
    for (std::size_t j = 0; j < 3; ++j) c.expect(m.values[i][j] == m.values[j][i], "symmetry");
  }
}

// --- 8 -------------------------------------------------------------------------

void workflow_contracts(Checker& c) {
  const auto start = Clock::now();
  const PriorArtDocument doc =
      testutil::make_doc("D7", {"a rotor spins", "a housing encloses", "a seal"});
  ExaminationRecord r;
  r.application_id = "A";
  r.claim_text = "A pump comprising: a rotor; a housing.";
  r.prior_art_doc_id = "D7";
  r.gold_segmentation = testutil::literal_segmentation(r.claim_text, {"A pump comprising:", "a rotor", "a housing"});
  r.gold_references = FeatureReferences{{}, {par(1)}, {par(2)}};

  std::mutex mutex;
  std::vector<llm::CompletionRequest> seen;
  llm::CallbackClient client([&](const llm::CompletionRequest& req) {
    {
      std::lock_guard lock(mutex);
      seen.push_back(req);
    }
    llm::CompletionResponse out;
    if (req.step == "aggregate") {
      out.value = {{"claim_verdict", "not_novel"}};
    } else {
      out.value = {{"passages", {"par 1", "par 42", "claim 9", "par 2"}},
                   {"verdict", "fully_disclosed"},
                   {"summary", "disclosed"}};
    }
    out.raw = out.value.dump();
    return out;
  });
  llm::WorkflowConfig config;
  const auto out = llm::hierarchical_examine(r, doc, client, config);
  c.expect(seen.size() == 4, "call count " + std::to_string(seen.size()));
  std::vector<std::string> feature_prompts;
  for (const auto& req : seen) {
    if (req.step == "feature") feature_prompts.push_back(req.messages[1].content);
  }
  const std::string prefix = "Prior art document D7:\n" + llm::render_document(doc) + "\n\n";
  for (const auto& p : feature_prompts) {
    c.expect(p.compare(0, prefix.size(), prefix) == 0, "prior-art prefix differs");
  }
  for (const auto& f : out.result.features) {
    for (const auto& id : f.ranked_passages) c.expect(doc.find(id) != nullptr, "hallucinated id escaped");
  }
  c.expect(out.trace.dropped_ids == 6, "dropped ids " + std::to_string(out.trace.dropped_ids));

  // Self-consistency with scripted votes N, N, NN.
  auto scripted = [](ClaimVerdict v, std::vector<PassageId> ids) {
    llm::WorkflowOutput o;
    o.result.predicted_segmentation.features = {{{0, 5}, "a pin"}};
    FeatureOutcome f;
    f.ranked_passages = std::move(ids);
    o.result.features = {f};
    o.result.claim_verdict = v;
    return o;
  };
  const std::vector<llm::WorkflowOutput> votes = {
      scripted(ClaimVerdict::kNovel, {par(1), par(3)}), scripted(ClaimVerdict::kNovel, {par(1)}),
      scripted(ClaimVerdict::kNotNovel, {par(2), par(3)})};
  std::size_t i = 0;
  const auto sc = llm::self_consistency([&](std::uint64_t, double) { return votes[i++]; }, 3, 0);
  c.expect(sc.result.claim_verdict == ClaimVerdict::kNovel, "self-consistency verdict");
  c.expect(sc.result.features[0].ranked_passages == std::vector<PassageId>{par(1), par(3)},
           "ceil(k/2) passage threshold");

  // Ablations change the prompt content.
  std::vector<FeatureOutcome> outcomes(1);
  outcomes[0].ranked_passages = {par(3)};
  outcomes[0].summary = "unique-summary-text";
  seen.clear();
  llm::WorkflowTrace trace;
  llm::WorkflowConfig no_summaries;
  no_summaries.include_summaries = false;
  llm::aggregate_claim_verdict(r, doc, outcomes, client, config, trace);
  llm::aggregate_claim_verdict(r, doc, outcomes, client, no_summaries, trace);
  c.expect(seen[0].messages[1].content.find("unique-summary-text") != std::string::npos,
           "summary present by default");
  c.expect(seen[1].messages[1].content.find("Feature analyses") == std::string::npos,
           "summaries section removed");
  llm::WorkflowConfig gold;
  gold.use_gold_references = true;
  llm::aggregate_claim_verdict(r, doc, outcomes, client, gold, trace);
  const std::string& user = seen[2].messages[1].content;
  c.expect(user.find("[par 1]") != std::string::npos && user.find("[par 2]") != std::string::npos &&
               user.find("[par 3]") == std::string::npos,
           "gold-reference filtering");
  const double secs = seconds_since(start);
  c.expect(secs < 10.0, "runtime");
}

// --- 9 -------------------------------------------------------------------------

struct PipelineOutput {
  std::string random_bytes;
  std::string rouge_bytes;
  EvalReport random_report;
  EvalReport rouge_report;
};

PipelineOutput run_pipeline(const fs::path& root) {
  Workspace ws(root);
  WorkbenchConfig config;
  const SynthResult synth = cmd_synth(ws, 909, 200, SynthOptions{}, "input");
  if (!cmd_ingest(ws, synth.records_path, synth.docs_path).accepted) {
    throw Error("ingest rejected the synthetic corpus");
  }
  cmd_prepare(ws, config);
  PipelineOutput out;
  for (const std::string method : {"random", "rouge"}) {
    const RunSummary s = cmd_run(ws, {method, "all", ""}, config, {});
    if (s.exit_code() != kExitOk) throw Error(method + " run had failures");
    EvalReport report = cmd_eval(ws, {"runs/" + method + ".jsonl", "all", "", method}, config);
    (method == "random" ? out.random_bytes : out.rouge_bytes) =
        read_file(root / "runs" / (method + ".jsonl"));
    (method == "random" ? out.random_report : out.rouge_report) = std::move(report);
  }
  cmd_agree(ws, {{"runs/random.jsonl", "runs/rouge.jsonl"}, "all", ""});
  if (!fs::exists(root / "reports/agreement.json")) throw Error("agreement report missing");
  return out;
}

void end_to_end(Checker& c) {
  const auto start = Clock::now();
  testutil::TempDir a, b;
  const PipelineOutput first = run_pipeline(a.path());
  const PipelineOutput second = run_pipeline(b.path());
  const double acc = first.random_report.full.classification.accuracy;
  c.expect(std::abs(acc - 0.5) <= 0.05, "random accuracy " + std::to_string(acc));
  const double rouge_r = first.rouge_report.full.feature_level.r;
  const double random_r = first.random_report.full.feature_level.r;
  c.expect(rouge_r > random_r, "rouge recall " + std::to_string(rouge_r) + " vs random " +
                                   std::to_string(random_r));
  c.expect(first.random_bytes == second.random_bytes, "random predictions differ on re-run");
  c.expect(first.rouge_bytes == second.rouge_bytes, "rouge predictions differ on re-run");
  c.expect(!first.random_bytes.empty(), "empty prediction file");
  const double secs = seconds_since(start);
  c.expect(secs < 300.0, "runtime");
  std::ostringstream note;
  note.precision(3);
  note << "random acc " << acc << " over " << first.random_report.full.counts.records
       << " records; feature recall rouge " << rouge_r << " vs random " << random_r << "; "
       << secs << " s for two runs";
  c.note = note.str();
}

// --- 10 ------------------------------------------------------------------------

void configuration_fidelity(Checker& c) {
  const Json d = default_config_json();
  c.expect(d.at("stratify_bins") == 100, "stratify_bins");
  c.expect(d.at("split_ratios") == Json({0.4, 0.1, 0.5}), "split_ratios");
  c.expect(d.at("rouge_threshold") == 0.4, "rouge_threshold");
  c.expect(d.at("embedding_threshold") == 0.5, "embedding_threshold");
  c.expect(d.at("tfidf_max_features") == 500, "tfidf_max_features");
  c.expect(d.at("tfidf_max_ngram") == 4, "tfidf_max_ngram");
  c.expect(d.at("length_unit") == "words", "length_unit");
  const WorkbenchConfig cfg = config_from_json(d);
  const TfidfOptions t = feature_space_options(cfg).tfidf;
  c.expect(t.max_features == 500 && t.max_ngram == 4, "tfidf options view");
  std::set<std::string> feature_verdicts, claim_verdicts;
  for (auto v : {FeatureVerdict::kFullyDisclosed, FeatureVerdict::kPartiallyDisclosed,
                 FeatureVerdict::kNotDisclosed}) {
    feature_verdicts.insert(std::string(to_string(v)));
    c.expect(parse_feature_verdict(to_string(v)) == v, "feature verdict round trip");
  }
  for (auto v : {NoveltyLabel::kNovel, NoveltyLabel::kNotNovel}) {
    claim_verdicts.insert(std::string(to_string(v)));
    c.expect(parse_novelty_label(to_string(v)) == v, "claim verdict round trip");
  }
  c.expect(feature_verdicts.size() == 3, "3-way feature verdicts");
  c.expect(claim_verdicts.size() == 2, "2-way claim verdicts");
  bool rejects = false;
  try {
    parse_feature_verdict("mostly_disclosed");
  } catch (const Error&) {
    rejects = true;
  }
  c.expect(rejects, "fourth feature verdict accepted");
  const std::string schema = llm::feature_request(Feature{{0, 1}, "x"}, "x",
                                                  testutil::make_doc("D", {"p"}), {})
                                 .output_schema.dump();
  c.expect(schema.find("partially_disclosed") != std::string::npos, "feature schema enum");
  // Full snapshot of the documented surface; a new or renamed key must be
  // added here deliberately.
  const Json snapshot = Json::parse(R"json(
{
  "adversarial_filter": true,
  "alignment_distance": "raw",
  "client_initial_delay_ms": 500,
  "client_max_retries": 4,
  "embedding_client": "hashing",
  "embedding_dimensions": 256,
  "embedding_model": "",
  "embedding_threshold": 0.5,
  "embedding_url": "",
  "include_prior_art": true,
  "include_summaries": true,
  "jobs": 1,
  "length_unit": "words",
  "llm_client": "http",
  "llm_fixture": "",
  "llm_model": "",
  "llm_url": "",
  "locate_max_normalized_distance": 0.5,
  "locate_window_slack": 0.2,
  "logreg_iterations": 500,
  "logreg_l2": 1.0,
  "logreg_learning_rate": 0.1,
  "max_in_flight": 4,
  "nfi_novel_verdicts": [
    "partially_disclosed",
    "not_disclosed"
  ],
  "pipeline_order": "stratify_then_split",
  "random_expected_passages": 2.0,
  "rouge_threshold": 0.4,
  "sampling_temperature": 0.7,
  "schema_repair_attempts": 1,
  "seed": 13,
  "segmentation": "heuristic",
  "self_consistency_k": 1,
  "split_ratios": [
    0.4,
    0.1,
    0.5
  ],
  "stratify_bins": 100,
  "strip_numerals": true,
  "temperature": 0.0,
  "tfidf_max_features": 500,
  "tfidf_max_ngram": 4,
  "tokenizer": "lowercase_alnum_runs",
  "top_domain_classes": 50,
  "use_gold_references": false
})json");
  for (const auto& [key, value] : snapshot.items()) {
    c.expect(d.contains(key) && d.at(key) == value, "snapshot key " + key);
  }
  c.expect(d.size() == snapshot.size(), "key count " + std::to_string(d.size()));
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "metric oracle equivalence", metric_oracle_equivalence},
      {2, "soft-metric anchors", soft_metric_anchors},
      {3, "diff round-trip", diff_round_trip},
      {4, "reference parsing", reference_parsing},
      {5, "stratification and balance", stratification_balance},
      {6, "spurious-correlation reproduction", spurious_correlation},
      {7, "classification and agreement anchors", classification_agreement},
      {8, "workflow contracts", workflow_contracts},
      {9, "end-to-end pipeline", end_to_end},
      {10, "configuration fidelity", configuration_fidelity},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& cr : criteria) {
    if (!only.empty() && !only.contains(cr.number)) continue;
    Checker c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << cr.name;
    if (!c.ok()) {
      std::cout << " -- " << c.summary();
      ++failed;
    } else if (!c.note.empty()) {
      std::cout << " (" << c.note << ")";
    }
    std::cout << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
