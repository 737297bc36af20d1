// src/features.cpp

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

#include "spkffp/features.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw DataError("feature " + std::to_string(i) + " is negative or non-finite");
    }
  }
}

bool FeatureVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw DataError("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::ptrdiff_t Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::string normalize_term(std::string_view token) {
  if (token.size() >= 2 && token.front() == '[' && token.back() == ']') {
    return std::string(token);
  }
  return ascii_lower(token);
}

Vocabulary build_vocab(std::span<const AssembledSample> train, const VocabularyPolicy &policy) {
  if (train.empty()) throw DataError("cannot build a vocabulary from an empty training set");
  std::unordered_map<std::string, std::size_t> freq;
  for (const AssembledSample &sample : train) {
    for (std::string_view token : split_whitespace(sample.input_text)) {
      ++freq[normalize_term(token)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> entries;
  entries.reserve(freq.size());
  for (auto &[term, count] : freq) {
    if (count >= policy.min_freq) entries.emplace_back(term, count);
  }
  std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (entries.size() > policy.max_size) entries.resize(policy.max_size);
  if (entries.empty()) throw DataError("vocabulary is empty under the given policy");
  std::vector<std::string> terms;
  terms.reserve(entries.size());
  for (auto &entry : entries) terms.push_back(std::move(entry.first));
  return Vocabulary(std::move(terms));
}

FeatureVector word_features(std::string_view text, const Vocabulary &vocab) {
  std::vector<double> counts(vocab.size(), 0.0);
  for (std::string_view token : split_whitespace(text)) {
    std::ptrdiff_t idx = vocab.index_of(normalize_term(token));
    if (idx >= 0) counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  return FeatureVector(std::move(counts));
}

std::string vocab_to_json(const Vocabulary &vocab) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["terms"] = vocab.terms();
  return j.dump() + "\n";
}

Vocabulary vocab_from_json(std::string_view text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1) throw DataError("unsupported vocabulary version");
    return Vocabulary(j.at("terms").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("malformed vocabulary file: ") + e.what());
  }
}

}  // namespace spkffp
