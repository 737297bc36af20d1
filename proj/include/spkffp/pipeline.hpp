// include/spkffp/pipeline.hpp

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

#ifndef SPKFFP_PIPELINE_HPP_
#define SPKFFP_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spkffp/corpus.hpp"
#include "spkffp/eval.hpp"

namespace spkffp {

// Everything needed to reproduce one end-to-end run. Stored as JSON; `//`
// and `/* */` comments are accepted when parsing, unknown keys are rejected.
struct RunConfig {
  std::string corpus_path;
  std::string corpus_format = "canonical";  // friends | bbt | canonical
  std::string split_mode = "by-season";     // by-season | random
  std::vector<int> valid_seasons;
  std::vector<int> test_seasons;
  std::vector<double> split_ratios{0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
  std::string labels = "friends";  // preset name or comma-separated main speakers
  std::size_t max_previous_context = 5;
  bool include_speaker_tokens = true;
  std::string feature_mode = "word";  // word | activations
  std::string activations_path;
  std::size_t vocab_min_freq = 1;
  std::size_t vocab_max_size = 50000;
  std::size_t k = 409;
  std::string membership = "pareto80_20";
  std::optional<double> normalizer;  // "N"; defaults to k
  std::size_t top_n = 2;
  double tau = 0.01;
  std::string eval_split = "test";  // valid | test
  std::string output_dir = "run";

  friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

RunConfig parse_run_config(std::string_view text);
RunConfig read_run_config(const std::string &path);
std::string serialize_run_config(const RunConfig &config);

// Checks enumerations and ranges; throws UsageError.
void validate_run_config(const RunConfig &config);

SplitSpec split_spec_from(const RunConfig &config);
Corpus load_corpus(const std::string &format, const std::string &path);

// A failure attributed to one pipeline stage, with the CLI exit code.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string &message, int exit_code)
      : std::runtime_error(message), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string &stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct RunArtifacts {
  std::string directory;
  std::vector<std::string> files;
  MetricsReport metrics;
};

// ingest -> split -> label -> assemble -> features -> fingerprint -> classify
// -> eval. Writes samples.jsonl, library.json, classifications.jsonl,
// metrics.json, metrics.csv, confusion.csv and config.json (plus vocab.json
// in word mode) into config.output_dir.
RunArtifacts run(const RunConfig &config);

}  // namespace spkffp

#endif  // SPKFFP_PIPELINE_HPP_
