// src/run_config.cpp

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

#include <json.hpp>
#include <set>

#include "spkffp/errors.hpp"
#include "spkffp/fingerprint.hpp"
#include "spkffp/pipeline.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace {

using nlohmann::json;

template <typename T>
void read_key(const json &j, const char *key, T &out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception &) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error &e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const std::set<std::string> known = {
      "corpus_path", "corpus_format", "split_mode", "valid_seasons", "test_seasons",
      "split_ratios", "seed", "labels", "max_previous_context", "include_speaker_tokens",
      "feature_mode", "activations_path", "vocab_min_freq", "vocab_max_size", "k",
      "membership", "N", "top_n", "tau", "eval_split", "output_dir"};
  for (const auto &[key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
  }
  RunConfig c;
  read_key(j, "corpus_path", c.corpus_path);
  read_key(j, "corpus_format", c.corpus_format);
  read_key(j, "split_mode", c.split_mode);
  read_key(j, "valid_seasons", c.valid_seasons);
  read_key(j, "test_seasons", c.test_seasons);
  read_key(j, "split_ratios", c.split_ratios);
  read_key(j, "seed", c.seed);
  read_key(j, "labels", c.labels);
  read_key(j, "max_previous_context", c.max_previous_context);
  read_key(j, "include_speaker_tokens", c.include_speaker_tokens);
  read_key(j, "feature_mode", c.feature_mode);
  read_key(j, "activations_path", c.activations_path);
  read_key(j, "vocab_min_freq", c.vocab_min_freq);
  read_key(j, "vocab_max_size", c.vocab_max_size);
  read_key(j, "k", c.k);
  read_key(j, "membership", c.membership);
  if (auto n = j.find("N"); n != j.end() && !n->is_null()) {
    if (!n->is_number()) throw UsageError("config key 'N' has the wrong type");
    c.normalizer = n->get<double>();
  }
  read_key(j, "top_n", c.top_n);
  read_key(j, "tau", c.tau);
  read_key(j, "eval_split", c.eval_split);
  read_key(j, "output_dir", c.output_dir);
  validate_run_config(c);
  return c;
}

RunConfig read_run_config(const std::string &path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError &e) {
    throw UsageError(e.what());
  }
  return parse_run_config(text);
}

std::string serialize_run_config(const RunConfig &c) {
  nlohmann::ordered_json j;
  j["corpus_path"] = c.corpus_path;
  j["corpus_format"] = c.corpus_format;
  j["split_mode"] = c.split_mode;
  j["valid_seasons"] = c.valid_seasons;
  j["test_seasons"] = c.test_seasons;
  j["split_ratios"] = c.split_ratios;
  j["seed"] = c.seed;
  j["labels"] = c.labels;
  j["max_previous_context"] = c.max_previous_context;
  j["include_speaker_tokens"] = c.include_speaker_tokens;
  j["feature_mode"] = c.feature_mode;
  j["activations_path"] = c.activations_path;
  j["vocab_min_freq"] = c.vocab_min_freq;
  j["vocab_max_size"] = c.vocab_max_size;
  j["k"] = c.k;
  j["membership"] = c.membership;
  if (c.normalizer) {
    j["N"] = *c.normalizer;
  } else {
    j["N"] = nullptr;
  }
  j["top_n"] = c.top_n;
  j["tau"] = c.tau;
  j["eval_split"] = c.eval_split;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

void validate_run_config(const RunConfig &c) {
  auto one_of = [](const std::string &value, std::initializer_list<const char *> options,
                   const char *key) {
    for (const char *o : options) {
      if (value == o) return;
    }
    throw UsageError(std::string("config key '") + key + "' has invalid value '" + value + "'");
  };
  one_of(c.corpus_format, {"friends", "bbt", "canonical"}, "corpus_format");
  one_of(c.split_mode, {"by-season", "random"}, "split_mode");
  one_of(c.feature_mode, {"word", "activations"}, "feature_mode");
  one_of(c.eval_split, {"valid", "test"}, "eval_split");
  try {
    parse_membership(c.membership);
  } catch (const DataError &e) {
    throw UsageError(e.what());
  }
  if (c.split_ratios.size() != 3) throw UsageError("split_ratios needs three values");
  if (c.k == 0) throw UsageError("k must be >= 1");
  if (c.normalizer && !(*c.normalizer > 0.0)) throw UsageError("N must be > 0");
  if (c.top_n < 2 || c.top_n > 4) throw UsageError("top_n must be 2, 3 or 4");
  if (!(c.tau >= 0.0)) throw UsageError("tau must be >= 0");
  if (c.vocab_max_size == 0) throw UsageError("vocab_max_size must be >= 1");
}

SplitSpec split_spec_from(const RunConfig &c) {
  SplitSpec spec;
  spec.mode = c.split_mode == "random" ? SplitSpec::Mode::kRandom : SplitSpec::Mode::kBySeason;
  spec.valid_seasons.insert(c.valid_seasons.begin(), c.valid_seasons.end());
  spec.test_seasons.insert(c.test_seasons.begin(), c.test_seasons.end());
  spec.train_ratio = c.split_ratios.at(0);
  spec.valid_ratio = c.split_ratios.at(1);
  spec.test_ratio = c.split_ratios.at(2);
  spec.seed = c.seed;
  return spec;
}

Corpus load_corpus(const std::string &format, const std::string &path) {
  if (format == "friends") return parse_canonical_text(adapt_friends(path));
  if (format == "bbt") return parse_canonical_text(adapt_bbt(path));
  if (format == "canonical") return parse_canonical(path);
  throw UsageError("unknown corpus format '" + format + "'");
}

}  // namespace spkffp
