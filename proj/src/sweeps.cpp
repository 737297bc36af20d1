// src/sweeps.cpp

// Copyright 2026  The spkffp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>

#include "spkffp/errors.hpp"
#include "spkffp/eval.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

std::vector<LabeledVector> featurize_words(std::span<const AssembledSample> samples,
                                           const Vocabulary &vocab) {
  std::vector<LabeledVector> out;
  out.reserve(samples.size());
  for (const AssembledSample &s : samples) {
    out.push_back({s.sample_id, s.label, word_features(s, vocab)});
  }
  return out;
}

std::vector<LabeledVector> featurize_activations(std::span<const AssembledSample> samples,
                                                 const ActivationSet &activations) {
  std::vector<LabeledVector> out;
  out.reserve(samples.size());
  for (const AssembledSample &s : samples) {
    auto it = activations.vectors.find(s.sample_id);
    if (it == activations.vectors.end()) {
      throw DataError("no activation record for sample '" + s.sample_id + "'");
    }
    out.push_back({s.sample_id, s.label, it->second});
  }
  return out;
}

std::vector<SweepPoint> sweep_k(std::span<const LabeledVector> train,
                                std::span<const LabeledVector> test,
                                const std::vector<std::size_t> &ks, MembershipKind membership,
                                std::optional<double> normalizer,
                                const std::vector<std::string> &classes) {
  if (ks.empty()) throw DataError("k list is empty");
  std::vector<std::size_t> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SweepPoint> points;
  for (std::size_t k : sorted) {
    LibraryOptions options;
    options.k = k;
    options.membership = membership;
    options.normalizer = normalizer;
    FingerprintLibrary library = build_library(train, options);
    std::vector<ScoredSample> scored = classify_all(test, library);
    points.push_back({static_cast<double>(k), score(scored, classes)});
  }
  return points;
}

std::string sweep_k_csv(std::span<const SweepPoint> points) {
  std::string out = "k,accuracy\n";
  for (const SweepPoint &p : points) {
    out += std::to_string(static_cast<std::size_t>(p.parameter)) + "," +
           format_fixed(p.metrics.accuracy, 2) + "\n";
  }
  return out;
}

std::string activation_path_for(const std::string &path_template, std::size_t context) {
  std::string path = path_template;
  const std::size_t pos = path.find("{}");
  if (pos == std::string::npos) {
    throw DataError("activation template '" + path_template + "' has no '{}' placeholder");
  }
  path.replace(pos, 2, std::to_string(context));
  return path;
}

std::vector<SweepPoint> sweep_context(const LabeledCorpus &train, const LabeledCorpus &test,
                                      const std::vector<std::size_t> &contexts,
                                      const FeaturePipelineConfig &config) {
  if (contexts.empty()) throw DataError("context list is empty");
  std::vector<std::size_t> sorted = contexts;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<std::string> classes = train.labels.labels();
  std::vector<SweepPoint> points;
  for (std::size_t context : sorted) {
    AssemblyOptions assembly{context, config.include_speaker_tokens};
    std::vector<AssembledSample> train_samples = assemble_samples(train, assembly);
    std::vector<AssembledSample> test_samples = assemble_samples(test, assembly);
    std::vector<LabeledVector> train_vectors;
    std::vector<LabeledVector> test_vectors;
    if (config.mode == FeaturePipelineConfig::Mode::kWord) {
      Vocabulary vocab = build_vocab(train_samples, config.vocab);
      train_vectors = featurize_words(train_samples, vocab);
      test_vectors = featurize_words(test_samples, vocab);
    } else {
      const std::string path = activation_path_for(config.activation_template, context);
      if (!std::filesystem::exists(path)) {
        throw DataError("missing activation file for context " + std::to_string(context) + ": " +
                        path);
      }
      ActivationSet activations = read_activations(path);
      train_vectors = featurize_activations(train_samples, activations);
      test_vectors = featurize_activations(test_samples, activations);
    }
    FingerprintLibrary library = build_library(train_vectors, config.library);
    std::vector<ScoredSample> scored = classify_all(test_vectors, library);
    points.push_back({static_cast<double>(context), score(scored, classes)});
  }
  return points;
}

std::string sweep_context_csv(std::span<const SweepPoint> points) {
  std::string out = "context,macro_f1,weighted_f1,accuracy\n";
  for (const SweepPoint &p : points) {
    out += std::to_string(static_cast<std::size_t>(p.parameter)) + "," +
           format_fixed(p.metrics.macro_f1, 2) + "," + format_fixed(p.metrics.weighted_f1, 2) +
           "," + format_fixed(p.metrics.accuracy, 2) + "\n";
  }
  return out;
}

}  // namespace spkffp
