// src/pipeline.cpp

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

#include "spkffp/pipeline.hpp"

#include <filesystem>
#include <functional>

#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace {

namespace fs = std::filesystem;

template <typename Fn>
auto stage(const char *name, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const UsageError &e) {
    throw StageError(name, e.what(), 1);
  } catch (const DataError &e) {
    throw StageError(name, e.what(), 2);
  } catch (const InvariantError &e) {
    throw StageError(name, e.what(), 3);
  } catch (const fs::filesystem_error &e) {
    throw StageError(name, e.what(), 2);
  } catch (const std::exception &e) {
    throw StageError(name, e.what(), 3);
  }
}

}  // namespace

RunArtifacts run(const RunConfig &config) {
  stage("config", [&] { validate_run_config(config); });
  RunArtifacts artifacts;
  artifacts.directory = config.output_dir;
  auto out_path = [&](const char *name) {
    std::string path = (fs::path(config.output_dir) / name).string();
    artifacts.files.push_back(path);
    return path;
  };

  const LabelMap label_map = stage("labels", [&] { return LabelMap::from_spec(config.labels); });
  Corpus corpus = stage("ingest", [&] { return load_corpus(config.corpus_format,
                                                            config.corpus_path); });
  CorpusSplits splits = stage("split", [&] { return split(corpus, split_spec_from(config)); });
  LabeledCorpus train = apply_labels(std::move(splits.train), label_map);
  LabeledCorpus valid = apply_labels(std::move(splits.valid), label_map);
  LabeledCorpus test = apply_labels(std::move(splits.test), label_map);

  const AssemblyOptions assembly{config.max_previous_context, config.include_speaker_tokens};
  std::vector<AssembledSample> train_samples;
  std::vector<AssembledSample> eval_samples;
  stage("assemble", [&] {
    train_samples = assemble_samples(train, assembly);
    std::vector<AssembledSample> valid_samples = assemble_samples(valid, assembly);
    std::vector<AssembledSample> test_samples = assemble_samples(test, assembly);
    eval_samples = config.eval_split == "valid" ? valid_samples : test_samples;
    if (train_samples.empty()) throw DataError("training split has no samples");
    if (eval_samples.empty()) throw DataError(config.eval_split + " split has no samples");
    fs::create_directories(config.output_dir);
    std::vector<AssembledSample> all = train_samples;
    all.insert(all.end(), valid_samples.begin(), valid_samples.end());
    all.insert(all.end(), test_samples.begin(), test_samples.end());
    write_samples(all, out_path("samples.jsonl"));
  });

  std::vector<LabeledVector> train_vectors;
  std::vector<LabeledVector> eval_vectors;
  stage("features", [&] {
    if (config.feature_mode == "word") {
      Vocabulary vocab =
          build_vocab(train_samples, {config.vocab_min_freq, config.vocab_max_size});
      write_file(out_path("vocab.json"), vocab_to_json(vocab));
      train_vectors = featurize_words(train_samples, vocab);
      eval_vectors = featurize_words(eval_samples, vocab);
    } else {
      if (!fs::exists(config.activations_path)) {
        throw DataError("activation file not found: " + config.activations_path);
      }
      ActivationSet activations = read_activations(config.activations_path);
      train_vectors = featurize_activations(train_samples, activations);
      eval_vectors = featurize_activations(eval_samples, activations);
    }
  });

  FingerprintLibrary library = stage("fingerprint", [&] {
    LibraryOptions options;
    options.k = config.k;
    options.membership = parse_membership(config.membership);
    options.normalizer = config.normalizer;
    FingerprintLibrary lib = build_library(train_vectors, options);
    for (const std::string &label : label_map.labels()) {
      if (!lib.classes().count(label)) {
        warn("label '" + label + "' has no training samples and will never be predicted");
      }
    }
    write_library(lib, out_path("library.json"));
    return lib;
  });

  std::vector<ScoredSample> scored = stage("classify", [&] {
    auto results = classify_all(eval_vectors, library, GenericOptions{config.top_n, config.tau});
    write_scored(results, out_path("classifications.jsonl"));
    return results;
  });

  artifacts.metrics = stage("eval", [&] {
    MetricsReport report = score(scored, label_map.labels());
    write_file(out_path("metrics.json"), metrics_to_json(report));
    write_file(out_path("metrics.csv"), per_class_csv(report));
    write_file(out_path("confusion.csv"), confusion_csv(report));
    return report;
  });

  stage("config", [&] { write_file(out_path("config.json"), serialize_run_config(config)); });
  return artifacts;
}

}  // namespace spkffp
