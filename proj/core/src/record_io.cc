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

#include "novelty/record_io.h"

#include <fstream>
#include <sstream>

namespace novelty {
namespace {

template <typename E>
E parse_enum(std::string_view text, std::initializer_list<std::pair<std::string_view, E>> names,
             const char* what) {
  for (const auto& [name, value] : names) {
    if (name == text) return value;
  }
  throw ParseError(std::string("unknown ") + what + " \"" + std::string(text) + "\"",
                   std::string(text));
}

}  // namespace

PassageKind parse_passage_kind(std::string_view text) {
  return parse_enum<PassageKind>(text,
                                 {{"abstract", PassageKind::kAbstract},
                                  {"claim", PassageKind::kClaim},
                                  {"paragraph", PassageKind::kParagraph}},
                                 "passage kind");
}

NoveltyLabel parse_novelty_label(std::string_view text) {
  return parse_enum<NoveltyLabel>(
      text, {{"novel", NoveltyLabel::kNovel}, {"not_novel", NoveltyLabel::kNotNovel}},
      "novelty label");
}

FeatureVerdict parse_feature_verdict(std::string_view text) {
  return parse_enum<FeatureVerdict>(
      text,
      {{"fully_disclosed", FeatureVerdict::kFullyDisclosed},
       {"partially_disclosed", FeatureVerdict::kPartiallyDisclosed},
       {"not_disclosed", FeatureVerdict::kNotDisclosed}},
      "feature verdict");
}

ClaimVersion parse_claim_version(std::string_view text) {
  return parse_enum<ClaimVersion>(
      text, {{"initial", ClaimVersion::kInitial}, {"granted", ClaimVersion::kGranted}},
      "claim version");
}

void to_json(Json& j, const PassageId& id) {
  j = Json{{"kind", to_string(id.kind())}};
  if (id.kind() != PassageKind::kAbstract) j["number"] = id.number();
}

void from_json(const Json& j, PassageId& id) {
  const PassageKind kind = parse_passage_kind(j.at("kind").get<std::string>());
  if (kind == PassageKind::kAbstract) {
    if (j.contains("number") && !j["number"].is_null()) {
      throw ParseError("abstract passage id must not carry a number", j.dump());
    }
    id = PassageId::Abstract();
    return;
  }
  if (!j.contains("number")) {
    throw ParseError(std::string(to_string(kind)) + " passage id needs a number", j.dump());
  }
  id = PassageId::Of(kind, j.at("number").get<int>());
}

void to_json(Json& j, const Span& span) { j = Json::array({span.start, span.end}); }

void from_json(const Json& j, Span& span) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError("span must be a [start, end] pair", j.dump());
  }
  span.start = j[0].get<std::size_t>();
  span.end = j[1].get<std::size_t>();
  if (span.end < span.start) throw ParseError("span end before start", j.dump());
}

void to_json(Json& j, const SpanSet& spans) { j = spans.ranges(); }

void from_json(const Json& j, SpanSet& spans) {
  std::vector<Span> ranges = j.get<std::vector<Span>>();
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].start < ranges[i - 1].end) {
      throw ParseError("span set ranges must be sorted and disjoint", j.dump());
    }
  }
  spans = SpanSet::FromUnsorted(std::move(ranges));
}

void to_json(Json& j, const Feature& feature) {
  j = Json{{"span", feature.span}, {"text", feature.text}};
}

void from_json(const Json& j, Feature& feature) {
  feature.span = j.at("span").get<Span>();
  feature.text = j.at("text").get<std::string>();
}

void to_json(Json& j, const Segmentation& segmentation) {
  j = Json{{"features", segmentation.features}};
}

void from_json(const Json& j, Segmentation& segmentation) {
  segmentation.features = j.at("features").get<std::vector<Feature>>();
}

void to_json(Json& j, const Passage& passage) {
  j = Json{{"id", passage.id}, {"text", passage.text}};
}

void from_json(const Json& j, Passage& passage) {
  passage.id = j.at("id").get<PassageId>();
  passage.text = j.at("text").get<std::string>();
}

void to_json(Json& j, const PriorArtDocument& doc) {
  j = Json{{"doc_id", doc.doc_id}, {"passages", doc.passages}};
}

void from_json(const Json& j, PriorArtDocument& doc) {
  doc.doc_id = j.at("doc_id").get<std::string>();
  doc.passages = j.at("passages").get<std::vector<Passage>>();
}

void to_json(Json& j, const ExaminationRecord& record) {
  j = Json{{"application_id", record.application_id},
           {"claim_version", to_string(record.claim_version)},
           {"claim_text", record.claim_text},
           {"novelty_label", to_string(record.novelty_label)},
           {"prior_art_doc_id", record.prior_art_doc_id}};
  j["gold_segmentation"] =
      record.gold_segmentation ? Json(*record.gold_segmentation) : Json(nullptr);
  if (record.gold_references) {
    Json refs = Json::array();
    for (const auto& ids : *record.gold_references) refs.push_back(Json(ids));
    j["gold_references"] = std::move(refs);
  } else {
    j["gold_references"] = nullptr;
  }
  j["added_spans"] = record.added_spans ? Json(*record.added_spans) : Json(nullptr);
  j["domain_classes"] = record.domain_classes;
}

void from_json(const Json& j, ExaminationRecord& record) {
  record.application_id = j.at("application_id").get<std::string>();
  record.claim_version = parse_claim_version(j.at("claim_version").get<std::string>());
  record.claim_text = j.at("claim_text").get<std::string>();
  record.novelty_label = parse_novelty_label(j.at("novelty_label").get<std::string>());
  record.prior_art_doc_id = j.at("prior_art_doc_id").get<std::string>();
  record.gold_segmentation.reset();
  record.gold_references.reset();
  record.added_spans.reset();
  if (j.contains("gold_segmentation") && !j["gold_segmentation"].is_null()) {
    record.gold_segmentation = j["gold_segmentation"].get<Segmentation>();
  }
  if (j.contains("gold_references") && !j["gold_references"].is_null()) {
    FeatureReferences refs;
    for (const Json& ids : j["gold_references"]) {
      refs.push_back(ids.get<std::set<PassageId>>());
    }
    record.gold_references = std::move(refs);
  }
  if (j.contains("added_spans") && !j["added_spans"].is_null()) {
    record.added_spans = j["added_spans"].get<SpanSet>();
  }
  record.domain_classes = j.value("domain_classes", std::vector<std::string>{});
}

void to_json(Json& j, const FeatureOutcome& outcome) {
  j = Json{{"passages", outcome.ranked_passages},
           {"verdict", to_string(outcome.verdict)}};
  if (outcome.summary) j["summary"] = *outcome.summary;
  if (outcome.errored) j["errored"] = true;
}

void from_json(const Json& j, FeatureOutcome& outcome) {
  outcome.ranked_passages = j.at("passages").get<std::vector<PassageId>>();
  outcome.verdict = parse_feature_verdict(j.at("verdict").get<std::string>());
  outcome.summary.reset();
  if (j.contains("summary") && !j["summary"].is_null()) {
    outcome.summary = j["summary"].get<std::string>();
  }
  outcome.errored = j.value("errored", false);
}

void to_json(Json& j, const ExaminationResult& result) {
  j = Json{{"record_id", result.record_id},
           {"predicted_segmentation", result.predicted_segmentation},
           {"features", result.features},
           {"claim_verdict", to_string(result.claim_verdict)}};
}

void from_json(const Json& j, ExaminationResult& result) {
  result.record_id = j.at("record_id").get<std::string>();
  result.predicted_segmentation = j.at("predicted_segmentation").get<Segmentation>();
  result.features = j.at("features").get<std::vector<FeatureOutcome>>();
  result.claim_verdict = parse_novelty_label(j.at("claim_verdict").get<std::string>());
}

void to_json(Json& j, const RetrievalScores& s) {
  j = Json{{"p", s.p},   {"soft_p", s.soft_p},   {"r", s.r},       {"soft_r", s.soft_r},
           {"f1", s.f1}, {"soft_f1", s.soft_f1}, {"ndcg", s.ndcg}};
}

void from_json(const Json& j, RetrievalScores& s) {
  s.p = j.at("p").get<double>();
  s.soft_p = j.at("soft_p").get<double>();
  s.r = j.at("r").get<double>();
  s.soft_r = j.at("soft_r").get<double>();
  s.f1 = j.at("f1").get<double>();
  s.soft_f1 = j.at("soft_f1").get<double>();
  s.ndcg = j.at("ndcg").get<double>();
}

void to_json(Json& j, const Violation& violation) {
  j = Json{{"code", violation.code}, {"message", violation.message}};
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), path.string());
  std::vector<Json> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what(),
                       line, number);
    }
  }
  return rows;
}

namespace {

void write_rows(std::ofstream& out, const std::vector<Json>& rows) {
  for (const Json& row : rows) out << row.dump() << '\n';
}

}  // namespace

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_rows(out, rows);
}

void append_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to " + path.string());
  write_rows(out, rows);
}

namespace {

// Re-tags per-row conversion failures with the line they came from.
template <typename T>
std::vector<T> read_typed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), path.string());
  std::vector<T> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line).get<T>());
    } catch (const Json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what(),
                       line, number);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what(),
                       line, number);
    } catch (const InvalidArgument& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what(),
                       line, number);
    }
  }
  return out;
}

}  // namespace

std::vector<ExaminationRecord> read_records(const std::filesystem::path& path) {
  return read_typed<ExaminationRecord>(path);
}

std::vector<PriorArtDocument> read_documents(const std::filesystem::path& path) {
  return read_typed<PriorArtDocument>(path);
}

std::vector<ExaminationResult> read_results(const std::filesystem::path& path) {
  return read_typed<ExaminationResult>(path);
}

DocumentIndex index_documents(std::vector<PriorArtDocument> docs) {
  DocumentIndex index;
  for (PriorArtDocument& doc : docs) {
    std::string id = doc.doc_id;
    if (!index.emplace(id, std::move(doc)).second) {
      throw ParseError("duplicate document " + id, id);
    }
  }
  return index;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

}  // namespace novelty
