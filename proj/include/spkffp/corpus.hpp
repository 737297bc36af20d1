// include/spkffp/corpus.hpp

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

#ifndef SPKFFP_CORPUS_HPP_
#define SPKFFP_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace spkffp {

struct Turn {
  std::string speaker;  // raw speaker name as it appears in the transcript
  std::string text;
  std::size_t index = 0;  // position within the scene
  std::string label;      // class label, empty until apply_labels
};

struct Scene {
  std::string scene_id;
  std::optional<int> season;
  std::string episode;
  std::vector<Turn> turns;
};

struct Corpus {
  std::vector<Scene> scenes;

  std::size_t turn_count() const;
};

// Canonical corpus JSONL: one scene per line.
Corpus parse_canonical(const std::string &path);
Corpus parse_canonical_text(std::string_view contents);
std::string scene_to_canonical_line(const Scene &scene);
std::string to_canonical_jsonl(const Corpus &corpus);
void write_canonical(const Corpus &corpus, const std::string &path);

// Checks the Turn/Scene invariants; throws DataError on the first violation.
void validate_corpus(const Corpus &corpus);

// Upstream adapters. Both return canonical JSONL text.
//
// Friends: the character-mining JSON release, either one season file or a
// directory of them (processed in filename order). Utterances without a
// speaker or with empty text are dropped; multi-speaker utterances are
// attributed to the first listed speaker.
//
// Big Bang Theory: the episode-transcript CSV with columns
// episode_name, dialogue, person_scene. A row whose person_scene is "Scene"
// opens a new scene; rows are otherwise utterances.
std::string adapt_friends(const std::string &path);
std::string adapt_friends_text(std::string_view json_text);
std::string adapt_bbt(const std::string &path);
std::string adapt_bbt_text(std::string_view csv_text);

// ---------------------------------------------------------------------------
// Labels and speaker tokens

inline constexpr std::string_view kOtherLabel = "Other";

class LabelMap {
 public:
  explicit LabelMap(std::vector<std::string> main_speakers);

  static LabelMap friends();
  static LabelMap big_bang_theory();
  // "friends", "bbt", or a comma-separated list of main speakers.
  static LabelMap from_spec(std::string_view spec);

  const std::vector<std::string> &main_speakers() const { return main_; }
  // Main speakers followed by "Other".
  std::vector<std::string> labels() const;
  std::string label_for(std::string_view speaker) const;

 private:
  std::vector<std::string> main_;
  std::set<std::string, std::less<>> lookup_;
};

struct LabeledCorpus {
  Corpus corpus;
  LabelMap labels;
};

LabeledCorpus apply_labels(Corpus corpus, const LabelMap &label_map);

// "[" + uppercased name, every non-[A-Z0-9] run collapsed to "_" + "]".
// Leading/trailing underscores are dropped.
std::string make_speaker_token(std::string_view name);

// ---------------------------------------------------------------------------
// Context assembly

inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

struct AssembledSample {
  std::string sample_id;  // "scene_id:turn_index"
  std::string input_text;
  std::string label;
  std::size_t context_used = 0;
  std::size_t target_length_words = 0;
};

struct AssemblyOptions {
  std::size_t max_previous_context = 5;
  bool include_speaker_tokens = true;
};

std::vector<AssembledSample> assemble_samples(const LabeledCorpus &corpus,
                                              const AssemblyOptions &options);

std::string sample_to_json_line(const AssembledSample &sample);
std::vector<AssembledSample> parse_samples_text(std::string_view contents);
std::vector<AssembledSample> read_samples(const std::string &path);
void write_samples(const std::vector<AssembledSample> &samples,
                   const std::string &path);

// ---------------------------------------------------------------------------
// Splits

struct SplitSpec {
  enum class Mode { kBySeason, kRandom };
  Mode mode = Mode::kBySeason;
  std::set<int> valid_seasons;
  std::set<int> test_seasons;
  double train_ratio = 0.8;
  double valid_ratio = 0.1;
  double test_ratio = 0.1;
  std::uint64_t seed = 0;
};

struct CorpusSplits {
  Corpus train;
  Corpus valid;
  Corpus test;
};

// Partitions scenes. Each partition is sorted by scene_id.
CorpusSplits split(const Corpus &corpus, const SplitSpec &spec);

// ---------------------------------------------------------------------------
// Statistics

struct CorpusStats {
  std::size_t scenes = 0;
  std::size_t turns = 0;
  double mean_sentence_length = 0.0;
  double std_sentence_length = 0.0;
  double mean_scene_length = 0.0;
  double std_scene_length = 0.0;
  // Percentages keyed by label when the corpus is labeled, else by speaker.
  std::map<std::string, double> speaker_frequency;
};

// Population standard deviations; sentence length is the whitespace word
// count of the turn text.
CorpusStats corpus_stats(const Corpus &corpus);
std::string format_stats(const CorpusStats &stats);

}  // namespace spkffp

#endif  // SPKFFP_CORPUS_HPP_
