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

// Canonical line-delimited JSON representation of the domain model.
//
// Spans are [start, end] integer pairs; passage ids are
// {"kind": "paragraph"|"claim"|"abstract", "number": int} with "number"
// omitted for the abstract.

#ifndef NOVELTY_RECORD_IO_H_
#define NOVELTY_RECORD_IO_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novelty/errors.h"
#include "novelty/types.h"

namespace novelty {

using Json = nlohmann::json;

void to_json(Json& j, const PassageId& id);
void from_json(const Json& j, PassageId& id);
void to_json(Json& j, const Span& span);
void from_json(const Json& j, Span& span);
void to_json(Json& j, const SpanSet& spans);
void from_json(const Json& j, SpanSet& spans);
void to_json(Json& j, const Feature& feature);
void from_json(const Json& j, Feature& feature);
void to_json(Json& j, const Segmentation& segmentation);
void from_json(const Json& j, Segmentation& segmentation);
void to_json(Json& j, const Passage& passage);
void from_json(const Json& j, Passage& passage);
void to_json(Json& j, const PriorArtDocument& doc);
void from_json(const Json& j, PriorArtDocument& doc);
void to_json(Json& j, const ExaminationRecord& record);
void from_json(const Json& j, ExaminationRecord& record);
void to_json(Json& j, const FeatureOutcome& outcome);
void from_json(const Json& j, FeatureOutcome& outcome);
void to_json(Json& j, const ExaminationResult& result);
void from_json(const Json& j, ExaminationResult& result);
void to_json(Json& j, const RetrievalScores& scores);
void from_json(const Json& j, RetrievalScores& scores);
void to_json(Json& j, const Violation& violation);

NoveltyLabel parse_novelty_label(std::string_view text);
FeatureVerdict parse_feature_verdict(std::string_view text);
ClaimVersion parse_claim_version(std::string_view text);
PassageKind parse_passage_kind(std::string_view text);

// Reads one JSON value per non-blank line. Parse failures raise ParseError
// carrying the 1-based line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);
// Appends rows to `path`, creating it if needed.
void append_jsonl(const std::filesystem::path& path, const std::vector<Json>& rows);

template <typename T>
void write_jsonl_as(const std::filesystem::path& path, const std::vector<T>& values) {
  std::vector<Json> rows;
  rows.reserve(values.size());
  for (const T& v : values) rows.emplace_back(v);
  write_jsonl(path, rows);
}

std::vector<ExaminationRecord> read_records(const std::filesystem::path& path);
std::vector<PriorArtDocument> read_documents(const std::filesystem::path& path);
std::vector<ExaminationResult> read_results(const std::filesystem::path& path);

using DocumentIndex = std::map<std::string, PriorArtDocument, std::less<>>;
DocumentIndex index_documents(std::vector<PriorArtDocument> docs);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace novelty

#endif  // NOVELTY_RECORD_IO_H_
