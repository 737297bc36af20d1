// src/stats.cpp

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

#include <cmath>
#include <sstream>

#include "spkffp/corpus.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double> &xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(sq / static_cast<double>(xs.size()));
  return m;
}

}  // namespace

CorpusStats corpus_stats(const Corpus &corpus) {
  CorpusStats stats;
  std::vector<double> sentence_lengths;
  std::vector<double> scene_lengths;
  std::map<std::string, std::size_t> counts;
  for (const Scene &scene : corpus.scenes) {
    scene_lengths.push_back(static_cast<double>(scene.turns.size()));
    for (const Turn &turn : scene.turns) {
      sentence_lengths.push_back(static_cast<double>(word_count(turn.text)));
      ++counts[turn.label.empty() ? turn.speaker : turn.label];
    }
  }
  stats.scenes = corpus.scenes.size();
  stats.turns = sentence_lengths.size();
  Moments sentence = moments(sentence_lengths);
  Moments scene = moments(scene_lengths);
  stats.mean_sentence_length = sentence.mean;
  stats.std_sentence_length = sentence.stddev;
  stats.mean_scene_length = scene.mean;
  stats.std_scene_length = scene.stddev;
  for (const auto &[name, count] : counts) {
    stats.speaker_frequency[name] = 100.0 * static_cast<double>(count) /
                                    static_cast<double>(stats.turns);
  }
  return stats;
}

std::string format_stats(const CorpusStats &stats) {
  std::ostringstream out;
  out << "total_scenes," << stats.scenes << '\n'
      << "total_turns," << stats.turns << '\n'
      << "mean_sentence_length," << format_fixed(stats.mean_sentence_length, 2) << '\n'
      << "std_sentence_length," << format_fixed(stats.std_sentence_length, 2) << '\n'
      << "mean_scene_length," << format_fixed(stats.mean_scene_length, 2) << '\n'
      << "std_scene_length," << format_fixed(stats.std_scene_length, 2) << '\n';
  for (const auto &[name, freq] : stats.speaker_frequency) {
    out << "speaker_frequency:" << name << ',' << format_fixed(freq, 2) << '\n';
  }
  return out.str();
}

}  // namespace spkffp
