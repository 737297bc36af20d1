// include/spkffp/features.hpp

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

#ifndef SPKFFP_FEATURES_HPP_
#define SPKFFP_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spkffp/corpus.hpp"

namespace spkffp {

// Dense non-negative activations in R^M. Construction validates that every
// entry is finite and >= 0.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  bool is_zero() const;

  friend bool operator==(const FeatureVector &, const FeatureVector &) = default;

 private:
  std::vector<double> values_;
};

struct VocabularyPolicy {
  std::size_t min_freq = 1;
  std::size_t max_size = 50000;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string> &terms() const { return terms_; }
  // Index of a (normalized) term, or -1 when out of vocabulary.
  std::ptrdiff_t index_of(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Bracketed tokens ("[SEP]", "[JOEY_TRIBBIANI]") are kept verbatim, every
// other whitespace token is ASCII-lowercased.
std::string normalize_term(std::string_view token);

// Terms sorted by (frequency desc, term asc), filtered by min_freq and
// truncated to max_size. Throws DataError if no term survives.
Vocabulary build_vocab(std::span<const AssembledSample> train, const VocabularyPolicy &policy);

FeatureVector word_features(std::string_view text, const Vocabulary &vocab);
inline FeatureVector word_features(const AssembledSample &sample, const Vocabulary &vocab) {
  return word_features(sample.input_text, vocab);
}

std::string vocab_to_json(const Vocabulary &vocab);
Vocabulary vocab_from_json(std::string_view text);

// ---------------------------------------------------------------------------
// Activation files
//
// Binary layout ("FFPA", little-endian):
//   magic "FFPA" | version u8 = 1 | M u32 | count u64
//   per record: id_len u16 | id bytes (UTF-8) | M x float32
// A JSONL debug form with {"id": ..., "vec": [...]} per line is accepted when
// the path ends in ".jsonl".

struct ActivationRecord {
  std::string sample_id;
  std::vector<float> values;  // raw, may be negative
};

struct ActivationSet {
  std::size_t dim = 0;
  std::map<std::string, FeatureVector> vectors;  // absolute values
};

void write_activations(const std::string &path, std::size_t dim,
                       std::span<const ActivationRecord> records);
std::string encode_activations(std::size_t dim, std::span<const ActivationRecord> records);

// Raw records exactly as stored.
std::vector<ActivationRecord> read_activation_records(const std::string &path,
                                                      std::size_t *dim = nullptr);
std::vector<ActivationRecord> decode_activations(std::string_view bytes,
                                                 std::size_t *dim = nullptr);

// Loads a file and takes the element-wise absolute value of each record.
ActivationSet read_activations(const std::string &path);

}  // namespace spkffp

#endif  // SPKFFP_FEATURES_HPP_
