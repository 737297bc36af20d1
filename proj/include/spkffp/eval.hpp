// include/spkffp/eval.hpp

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

#ifndef SPKFFP_EVAL_HPP_
#define SPKFFP_EVAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spkffp/corpus.hpp"
#include "spkffp/features.hpp"
#include "spkffp/fingerprint.hpp"

namespace spkffp {

// A classification joined with its gold label. Featureless samples carry no
// result and are excluded from every metric except the featureless count.
struct ScoredSample {
  std::string sample_id;
  std::string gold;
  bool featureless = false;
  ClassificationResult result;
  std::optional<GenericVerdict> generic;
};

struct GenericOptions {
  std::size_t top_n = 2;
  double tau = 0.01;
};

std::vector<ScoredSample> classify_all(std::span<const LabeledVector> samples,
                                       const FingerprintLibrary &library,
                                       const std::optional<GenericOptions> &generic = {});

std::string scored_to_json_line(const ScoredSample &sample);
std::vector<ScoredSample> parse_scored_text(std::string_view contents);
void write_scored(std::span<const ScoredSample> samples, const std::string &path);
std::vector<ScoredSample> read_scored(const std::string &path);

// ---------------------------------------------------------------------------

// All rates are percentages in [0, 100].
struct MetricsReport {
  std::vector<std::string> classes;  // confusion row/column order
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  std::map<std::string, double> per_class_f1;
  std::map<std::string, double> per_class_precision;
  std::map<std::string, double> per_class_recall;
  std::map<std::string, std::size_t> support;
  std::vector<std::vector<std::size_t>> confusion;  // rows = gold, cols = predicted
  std::size_t n_samples = 0;
  std::size_t n_featureless = 0;
};

// Per-class F1 is 0 when precision + recall is 0. Classes that never occur as
// gold or prediction keep F1 = 0 but are left out of both averages. `classes`
// fixes the confusion order; labels outside it are appended in sorted order.
MetricsReport score(std::span<const ScoredSample> samples,
                    const std::vector<std::string> &classes = {});

std::string metrics_to_json(const MetricsReport &report);
std::string confusion_csv(const MetricsReport &report);
std::string per_class_csv(const MetricsReport &report);

// ---------------------------------------------------------------------------

struct SweepPoint {
  double parameter = 0.0;  // k or context size
  MetricsReport metrics;
};

std::vector<SweepPoint> sweep_k(std::span<const LabeledVector> train,
                                std::span<const LabeledVector> test,
                                const std::vector<std::size_t> &ks, MembershipKind membership,
                                std::optional<double> normalizer = {},
                                const std::vector<std::string> &classes = {});
std::string sweep_k_csv(std::span<const SweepPoint> points);

struct FeaturePipelineConfig {
  enum class Mode { kWord, kActivations };
  Mode mode = Mode::kWord;
  VocabularyPolicy vocab;
  // Activation mode: "{}" is replaced by the context size.
  std::string activation_template;
  bool include_speaker_tokens = true;
  LibraryOptions library;
};

std::string activation_path_for(const std::string &path_template, std::size_t context);

// Featurizes assembled samples: word counts over `vocab`, or lookups in an
// activation set. Missing activation records raise DataError.
std::vector<LabeledVector> featurize_words(std::span<const AssembledSample> samples,
                                           const Vocabulary &vocab);
std::vector<LabeledVector> featurize_activations(std::span<const AssembledSample> samples,
                                                 const ActivationSet &activations);

std::vector<SweepPoint> sweep_context(const LabeledCorpus &train, const LabeledCorpus &test,
                                      const std::vector<std::size_t> &contexts,
                                      const FeaturePipelineConfig &config);
std::string sweep_context_csv(std::span<const SweepPoint> points);

// ---------------------------------------------------------------------------

struct LengthHistogram {
  std::size_t bin_width = 1;
  std::vector<std::size_t> bin_start;  // lower edge of each bin
  std::vector<std::size_t> correct_counts;
  std::vector<std::size_t> incorrect_counts;
  std::vector<double> correct_freq;    // normalized over correct samples
  std::vector<double> incorrect_freq;  // normalized over incorrect samples
};

// Bins [0, w), [w, 2w), ... with lengths >= cap folded into the last bin.
LengthHistogram length_histogram(std::span<const ScoredSample> samples,
                                 const std::map<std::string, std::size_t> &target_lengths,
                                 std::size_t bin_width = 1, std::size_t cap = 25);
std::string histogram_csv(const LengthHistogram &histogram);

struct GenericCurvePoint {
  double tau = 0.0;
  std::size_t top_n = 2;
  std::size_t removed = 0;
  std::optional<double> accuracy;  // absent once every sample is removed
};

std::vector<GenericCurvePoint> generic_curve(std::span<const ScoredSample> samples,
                                             std::size_t top_n, const std::vector<double> &taus);
std::string generic_curve_csv(std::span<const GenericCurvePoint> points);

// "start:stop:step", inclusive of stop.
std::vector<double> parse_tau_grid(std::string_view spec);

}  // namespace spkffp

#endif  // SPKFFP_EVAL_HPP_
