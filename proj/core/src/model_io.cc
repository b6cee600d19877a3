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

#include "novelty/model_io.h"

#include "novelty/errors.h"
#include "novelty/record_io.h"

namespace novelty {

void to_json(nlohmann::json& j, const TfidfVocabulary& vocab) {
  j = {{"ngrams", vocab.ngrams()}, {"idf", vocab.idf()}, {"max_ngram", vocab.max_ngram()}};
}

void from_json(const nlohmann::json& j, TfidfVocabulary& vocab) {
  vocab = TfidfVocabulary(j.at("ngrams").get<std::vector<std::string>>(),
                          j.at("idf").get<std::vector<double>>(),
                          j.at("max_ngram").get<std::size_t>());
}

void to_json(nlohmann::json& j, const FeatureSpace& space) {
  j = {{"domain_classes", space.domain_classes()}, {"vocabulary", space.vocabulary()}};
}

void from_json(const nlohmann::json& j, FeatureSpace& space) {
  space = FeatureSpace(j.at("domain_classes").get<std::vector<std::string>>(),
                       j.at("vocabulary").get<TfidfVocabulary>());
}

void to_json(nlohmann::json& j, const LogRegModel& model) {
  j = {{"format", "novelty.logreg/1"},
       {"feature_names", model.space.feature_names()},
       {"space", model.space},
       {"mean", model.mean},
       {"stddev", model.stddev},
       {"weights", model.weights},
       {"bias", model.bias},
       {"training",
        {{"l2", model.options.l2},
         {"iterations", model.options.iterations},
         {"learning_rate", model.options.learning_rate},
         {"seed", model.options.seed}}}};
}

void from_json(const nlohmann::json& j, LogRegModel& model) {
  model.space = j.at("space").get<FeatureSpace>();
  model.mean = j.at("mean").get<std::vector<double>>();
  model.stddev = j.at("stddev").get<std::vector<double>>();
  model.weights = j.at("weights").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  const auto& t = j.at("training");
  model.options.l2 = t.at("l2").get<double>();
  model.options.iterations = t.at("iterations").get<int>();
  model.options.learning_rate = t.at("learning_rate").get<double>();
  model.options.seed = t.at("seed").get<std::uint64_t>();
  const std::size_t d = model.weights.size();
  if (model.mean.size() != d || model.stddev.size() != d) {
    throw DimensionError("model scaler and weights disagree in size");
  }
  for (double s : model.stddev) {
    if (!(s > 0.0)) throw ParseError("model scaler has a non-positive stddev", "");
  }
}

void save_model(const std::filesystem::path& path, const LogRegModel& model) {
  write_file(path, nlohmann::json(model).dump(1) + "\n");
}

LogRegModel load_model(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path)).get<LogRegModel>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model file: ") + e.what(), path.string());
  }
}

}  // namespace novelty
