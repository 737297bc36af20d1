// src/assemble.cpp

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

#include <algorithm>
#include <json.hpp>
#include <unordered_set>

#include "spkffp/corpus.hpp"
#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

std::vector<AssembledSample> assemble_samples(const LabeledCorpus &corpus,
                                              const AssemblyOptions &options) {
  std::vector<AssembledSample> samples;
  samples.reserve(corpus.corpus.turn_count());
  for (const Scene &scene : corpus.corpus.scenes) {
    std::vector<std::string> tokens;
    tokens.reserve(scene.turns.size());
    for (const Turn &turn : scene.turns) {
      if (turn.label.empty()) {
        throw InvariantError("scene '" + scene.scene_id + "' is not labeled");
      }
      tokens.push_back(options.include_speaker_tokens ? make_speaker_token(turn.label)
                                                      : std::string());
    }
    for (std::size_t i = 0; i < scene.turns.size(); ++i) {
      const Turn &target = scene.turns[i];
      const std::size_t used = std::min(i, options.max_previous_context);
      std::string text(kClsToken);
      for (std::size_t j = i - used; j < i; ++j) {
        text.push_back(' ');
        if (options.include_speaker_tokens) {
          text += tokens[j];
          text.push_back(' ');
        }
        text += scene.turns[j].text;
        text.push_back(' ');
        text += kSepToken;
      }
      text.push_back(' ');
      text += target.text;
      text.push_back(' ');
      text += kSepToken;

      AssembledSample sample;
      sample.sample_id = scene.scene_id + ":" + std::to_string(target.index);
      sample.input_text = std::move(text);
      sample.label = target.label;
      sample.context_used = used;
      sample.target_length_words = word_count(target.text);
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

std::string sample_to_json_line(const AssembledSample &sample) {
  nlohmann::ordered_json j;
  j["id"] = sample.sample_id;
  j["label"] = sample.label;
  j["text"] = sample.input_text;
  j["context_used"] = sample.context_used;
  j["target_len"] = sample.target_length_words;
  return j.dump();
}

std::vector<AssembledSample> parse_samples_text(std::string_view contents) {
  std::vector<AssembledSample> samples;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    auto where = [line_no] { return "samples line " + std::to_string(line_no) + ": "; };
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      AssembledSample s;
      s.sample_id = j.at("id").get<std::string>();
      s.label = j.at("label").get<std::string>();
      s.input_text = j.at("text").get<std::string>();
      s.context_used = j.at("context_used").get<std::size_t>();
      s.target_length_words = j.at("target_len").get<std::size_t>();
      if (!seen.insert(s.sample_id).second) {
        throw DataError(where() + "duplicate id '" + s.sample_id + "'");
      }
      samples.push_back(std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw DataError(where() + e.what());
    }
  }
  if (samples.empty()) warn("sample file contains no samples");
  return samples;
}

std::vector<AssembledSample> read_samples(const std::string &path) {
  return parse_samples_text(read_file(path));
}

void write_samples(const std::vector<AssembledSample> &samples, const std::string &path) {
  std::string out;
  for (const AssembledSample &s : samples) {
    out += sample_to_json_line(s);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace spkffp
