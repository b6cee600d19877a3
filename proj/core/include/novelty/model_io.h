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

// JSON persistence of fitted models (vocabulary, feature space, logistic
// regression). Stored in the same structured-text format as the corpus.

#ifndef NOVELTY_MODEL_IO_H_
#define NOVELTY_MODEL_IO_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "novelty/baselines.h"
#include "novelty/textsim.h"

namespace novelty {

void to_json(nlohmann::json& j, const TfidfVocabulary& vocab);
void from_json(const nlohmann::json& j, TfidfVocabulary& vocab);
void to_json(nlohmann::json& j, const FeatureSpace& space);
void from_json(const nlohmann::json& j, FeatureSpace& space);
void to_json(nlohmann::json& j, const LogRegModel& model);
void from_json(const nlohmann::json& j, LogRegModel& model);

void save_model(const std::filesystem::path& path, const LogRegModel& model);
LogRegModel load_model(const std::filesystem::path& path);

}  // namespace novelty

#endif  // NOVELTY_MODEL_IO_H_
