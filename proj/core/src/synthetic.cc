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

#include "novelty/synthetic.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <string_view>

#include "novelty/errors.h"

namespace novelty {
namespace {

constexpr std::array<std::string_view, 15> kSystems = {
    "apparatus", "device", "assembly", "machine", "vehicle", "system", "instrument",
    "controller", "printer", "sensor", "pump", "turbine", "robot", "camera", "valve"};

constexpr std::array<std::string_view, 20> kAdjectives = {
    "rigid",   "flexible",  "hollow",    "rotatable", "detachable", "elongated", "annular",
    "threaded", "transparent", "conductive", "resilient", "porous", "tapered", "curved",
    "modular", "sealed",    "heated",    "insulated", "magnetic",   "adjustable"};

constexpr std::array<std::string_view, 24> kNouns = {
    "frame",  "housing", "shaft",   "lever",    "sleeve",    "bracket", "plate",  "spring",
    "gasket", "nozzle",  "flange",  "rotor",    "piston",    "clamp",   "hinge",  "coupling",
    "filter", "manifold", "cartridge", "carriage", "membrane", "bearing", "socket", "damper"};

constexpr std::array<std::string_view, 12> kVerbs = {
    "coupled", "attached", "mounted", "connected", "fastened", "secured",
    "joined",  "fixed",    "pivoted", "welded",    "bonded",   "clipped"};

constexpr std::array<std::string_view, 10> kMaterials = {
    "steel", "aluminium", "polymer", "ceramic", "glass",
    "brass", "titanium",  "rubber",  "carbon",  "copper"};

constexpr std::array<std::string_view, 8> kProcesses = {
    "casting", "moulding", "machining", "stamping", "extrusion", "forging", "sintering",
    "printing"};

constexpr std::array<std::string_view, 8> kDomainClasses = {
    "F16B", "A61B", "B60R", "G01N", "H01M", "F04D", "B25J", "G03B"};

struct FeatureParts {
  std::string_view adjective;
  std::string_view noun;
  std::string_view verb;
  std::string_view target;

  auto operator<=>(const FeatureParts&) const = default;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  template <typename Array>
  std::string_view pick(const Array& words) {
    return words[uniform(0, words.size() - 1)];
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool coin() { return uniform(0, 1) == 1; }

  FeatureParts feature() {
    FeatureParts f{pick(kAdjectives), pick(kNouns), pick(kVerbs), pick(kNouns)};
    while (f.target == f.noun) f.target = pick(kNouns);
    return f;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng_);
  }

 private:
  std::mt19937_64 rng_;
};

std::string join(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (std::string_view p : parts) out += p;
  return out;
}

// Seven words; the numeral, when given, follows the subject noun.
std::string feature_text(const FeatureParts& f, std::string_view numeral = {}) {
  std::string out = join({"a ", f.adjective, " ", f.noun});
  if (!numeral.empty()) out += join({" (", numeral, ")"});
  out += join({" ", f.verb, " to the ", f.target});
  return out;
}

std::string paraphrase(const FeatureParts& f) {
  return join({"In one embodiment, a ", f.adjective, " ", f.noun, " is ", f.verb,
               " to the ", f.target, "."});
}

// Builds a string from pieces while tracking the scalar ranges of marked ones.
// All generated text is ASCII, so byte and scalar offsets coincide.
class TextBuilder {
 public:
  Span append(std::string_view piece, bool added = false) {
    const Span span{text_.size(), text_.size() + piece.size()};
    text_ += piece;
    if (added && !piece.empty()) added_.push_back(span);
    return span;
  }
  const std::string& text() const { return text_; }
  const std::vector<Span>& added() const { return added_; }

 private:
  std::string text_;
  std::vector<Span> added_;
};

std::string padded(std::size_t index, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, index);
  return buf;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(std::uint64_t seed, std::size_t n_applications,
                                          const SynthOptions& options) {
  if (n_applications == 0) throw InvalidArgument("n_applications must be >= 1");
  if (options.min_features < 1 || options.min_features > options.max_features) {
    throw InvalidArgument("invalid synthetic feature count range");
  }
  if (options.length_skew && options.skew_min_added > options.skew_max_added) {
    throw InvalidArgument("invalid synthetic skew range");
  }
  Generator gen(seed);
  SyntheticCorpus corpus;

  for (std::size_t app = 0; app < n_applications; ++app) {
    const std::string app_id = "SYN" + padded(app, 6);
    const std::string doc_id = "XP" + padded(app, 7) + "A1";
    const std::string_view system = gen.pick(kSystems);
    std::vector<std::string> classes = {std::string(gen.pick(kDomainClasses))};
    if (gen.coin()) {
      const std::string second(gen.pick(kDomainClasses));
      if (second != classes.front()) classes.push_back(second);
    }
    std::sort(classes.begin(), classes.end());

    const std::size_t n_features = gen.uniform(options.min_features, options.max_features);
    const std::size_t n_added = options.length_skew
                                    ? gen.uniform(options.skew_min_added, options.skew_max_added)
                                    : options.added_features;
    std::set<FeatureParts> used;
    auto fresh = [&] {
      FeatureParts f = gen.feature();
      while (!used.insert(f).second) f = gen.feature();
      return f;
    };
    std::vector<FeatureParts> features(n_features);
    for (auto& f : features) f = fresh();
    std::vector<FeatureParts> added(n_added);
    for (auto& f : added) f = fresh();

    // Prior-art document: abstract, one paraphrase per initial feature and
    // distractors, in shuffled paragraph order.
    PriorArtDocument doc;
    doc.doc_id = doc_id;
    doc.passages.push_back(
        {PassageId::Abstract(),
         join({"A ", system, " is disclosed in which several components are arranged "
               "within a common enclosure."})});
    std::vector<std::string> paragraphs;
    std::vector<std::size_t> slot;  // paragraph index -> feature index or npos
    for (std::size_t i = 0; i < n_features; ++i) {
      paragraphs.push_back(paraphrase(features[i]));
      slot.push_back(i);
    }
    for (std::size_t i = 0; i < options.distractor_paragraphs; ++i) {
      paragraphs.push_back(join({"The ", gen.pick(kNouns), " may be formed from ",
                                 gen.pick(kMaterials), " using ", gen.pick(kProcesses),
                                 "."}));
      slot.push_back(static_cast<std::size_t>(-1));
    }
    std::vector<std::size_t> order(paragraphs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    gen.shuffle(order);
    std::vector<PassageId> feature_paragraph(n_features, PassageId::Abstract());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const PassageId id = PassageId::Paragraph(static_cast<int>(pos + 1));
      doc.passages.push_back({id, paragraphs[order[pos]]});
      if (slot[order[pos]] != static_cast<std::size_t>(-1)) {
        feature_paragraph[slot[order[pos]]] = id;
      }
    }

    // Initial claim: NotNovel, fully segmented and cited.
    ExaminationRecord initial;
    initial.application_id = app_id;
    initial.claim_version = ClaimVersion::kInitial;
    initial.novelty_label = NoveltyLabel::kNotNovel;
    initial.prior_art_doc_id = doc_id;
    initial.domain_classes = classes;
    {
      TextBuilder b;
      Segmentation seg;
      FeatureReferences refs;
      const std::string preamble = join({"A ", system, " comprising:"});
      seg.features.push_back({b.append(preamble), preamble});
      refs.push_back(gen.coin() ? std::set<PassageId>{PassageId::Abstract()}
                                : std::set<PassageId>{});
      for (std::size_t i = 0; i < n_features; ++i) {
        b.append(" ");
        const std::string text = feature_text(features[i]);
        seg.features.push_back({b.append(text), text});
        refs.push_back({feature_paragraph[i]});
        b.append(i + 1 < n_features ? ";" : ".");
      }
      initial.claim_text = b.text();
      initial.gold_segmentation = std::move(seg);
      initial.gold_references = std::move(refs);
    }

    // Granted claim: the added features go right after the preamble colon,
    // written as " <feature>;" so the diff recovers the insertion exactly.
    ExaminationRecord granted;
    granted.application_id = app_id;
    granted.claim_version = ClaimVersion::kGranted;
    granted.novelty_label = NoveltyLabel::kNovel;
    granted.prior_art_doc_id = doc_id;
    granted.domain_classes = classes;
    {
      TextBuilder b;
      std::size_t numeral = 10;
      auto next_numeral = [&]() -> std::string {
        if (!options.reference_numerals) return {};
        const std::string n = std::to_string(numeral);
        numeral += 2;
        return n;
      };
      b.append(join({"A ", system, " comprising:"}));
      std::string block;
      for (const FeatureParts& f : added) block += " " + feature_text(f, next_numeral()) + ";";
      b.append(block, true);
      for (std::size_t i = 0; i < n_features; ++i) {
        const FeatureParts& f = features[i];
        b.append(join({" a ", f.adjective, " ", f.noun}));
        const std::string n = next_numeral();
        if (!n.empty()) b.append(" (" + n + ")", true);
        b.append(join({" ", f.verb, " to the ", f.target}));
        b.append(i + 1 < n_features ? ";" : ".");
      }
      granted.claim_text = b.text();
      granted.added_spans = SpanSet::FromUnsorted(b.added());
    }

    corpus.records.push_back(std::move(initial));
    corpus.records.push_back(std::move(granted));
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace novelty
