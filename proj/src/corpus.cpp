// src/corpus.cpp

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

#include "spkffp/corpus.hpp"

#include <algorithm>
#include <json.hpp>
#include <unordered_set>

#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

using ordered_json = nlohmann::ordered_json;

std::size_t Corpus::turn_count() const {
  std::size_t n = 0;
  for (const Scene &scene : scenes) n += scene.turns.size();
  return n;
}

namespace {

Scene scene_from_json(const nlohmann::json &j, std::size_t line_no) {
  auto fail = [line_no](const std::string &what) -> DataError {
    return DataError("line " + std::to_string(line_no) + ": " + what);
  };
  if (!j.is_object()) throw fail("scene record must be a JSON object");
  Scene scene;
  auto id = j.find("scene_id");
  if (id == j.end() || !id->is_string()) throw fail("missing string field 'scene_id'");
  scene.scene_id = id->get<std::string>();

  if (auto season = j.find("season"); season != j.end() && !season->is_null()) {
    if (!season->is_number_integer()) throw fail("'season' must be an integer");
    int value = season->get<int>();
    if (value < 1) throw fail("'season' must be >= 1");
    scene.season = value;
  }
  if (auto episode = j.find("episode"); episode != j.end() && !episode->is_null()) {
    if (!episode->is_string()) throw fail("'episode' must be a string");
    scene.episode = episode->get<std::string>();
  }

  auto turns = j.find("turns");
  if (turns == j.end() || !turns->is_array()) throw fail("missing array field 'turns'");
  std::size_t index = 0;
  for (const auto &t : *turns) {
    if (!t.is_object()) throw fail("turn must be a JSON object");
    auto speaker = t.find("speaker");
    auto text = t.find("text");
    if (speaker == t.end() || !speaker->is_string()) throw fail("turn missing string field 'speaker'");
    if (text == t.end() || !text->is_string()) throw fail("turn missing string field 'text'");
    Turn turn;
    turn.speaker = speaker->get<std::string>();
    turn.text = text->get<std::string>();
    turn.index = index++;
    if (trim(turn.text).empty()) {
      throw fail("turn " + std::to_string(turn.index) + " of scene '" +
                 scene.scene_id + "' has empty text");
    }
    scene.turns.push_back(std::move(turn));
  }
  return scene;
}

}  // namespace

Corpus parse_canonical_text(std::string_view contents) {
  Corpus corpus;
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
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    }
    Scene scene = scene_from_json(j, line_no);
    if (!seen.insert(scene.scene_id).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate scene_id '" +
                      scene.scene_id + "'");
    }
    corpus.scenes.push_back(std::move(scene));
  }
  if (corpus.scenes.empty()) warn("corpus contains no scenes");
  return corpus;
}

Corpus parse_canonical(const std::string &path) {
  return parse_canonical_text(read_file(path));
}

std::string scene_to_canonical_line(const Scene &scene) {
  ordered_json j;
  j["scene_id"] = scene.scene_id;
  if (scene.season) j["season"] = *scene.season;
  j["episode"] = scene.episode;
  ordered_json turns = ordered_json::array();
  for (const Turn &turn : scene.turns) {
    ordered_json t;
    t["speaker"] = turn.speaker;
    t["text"] = turn.text;
    turns.push_back(std::move(t));
  }
  j["turns"] = std::move(turns);
  return j.dump();
}

std::string to_canonical_jsonl(const Corpus &corpus) {
  std::string out;
  for (const Scene &scene : corpus.scenes) {
    out += scene_to_canonical_line(scene);
    out += '\n';
  }
  return out;
}

void write_canonical(const Corpus &corpus, const std::string &path) {
  write_file(path, to_canonical_jsonl(corpus));
}

void validate_corpus(const Corpus &corpus) {
  std::unordered_set<std::string_view> ids;
  for (const Scene &scene : corpus.scenes) {
    if (!ids.insert(scene.scene_id).second) {
      throw DataError("duplicate scene_id '" + scene.scene_id + "'");
    }
    if (scene.season && *scene.season < 1) {
      throw DataError("scene '" + scene.scene_id + "' has season < 1");
    }
    for (std::size_t i = 0; i < scene.turns.size(); ++i) {
      const Turn &turn = scene.turns[i];
      if (turn.index != i) {
        throw DataError("scene '" + scene.scene_id + "' turn indices out of order");
      }
      if (trim(turn.text).empty()) {
        throw DataError("scene '" + scene.scene_id + "' turn " + std::to_string(i) +
                        " has empty text");
      }
    }
  }
}

// ---------------------------------------------------------------------------

LabelMap::LabelMap(std::vector<std::string> main_speakers) : main_(std::move(main_speakers)) {
  if (main_.empty()) throw DataError("label map needs at least one main speaker");
  std::set<std::string> tokens{make_speaker_token(kOtherLabel)};
  for (const std::string &name : main_) {
    if (name == kOtherLabel) throw DataError("'Other' cannot be a main speaker");
    if (!lookup_.insert(name).second) throw DataError("duplicate main speaker '" + name + "'");
    if (!tokens.insert(make_speaker_token(name)).second) {
      throw DataError("speaker token collision for '" + name + "'");
    }
  }
}

LabelMap LabelMap::friends() {
  return LabelMap({"Chandler Bing", "Joey Tribbiani", "Monica Geller", "Phoebe Buffay",
                   "Rachel Green", "Ross Geller"});
}

LabelMap LabelMap::big_bang_theory() {
  return LabelMap({"Amy", "Bernadette", "Howard", "Leonard", "Penny", "Raj", "Sheldon"});
}

LabelMap LabelMap::from_spec(std::string_view spec) {
  if (spec == "friends") return friends();
  if (spec == "bbt") return big_bang_theory();
  std::vector<std::string> names;
  for (const std::string &part : split(spec, ',')) {
    std::string name = normalize_whitespace(part);
    if (!name.empty()) names.push_back(std::move(name));
  }
  return LabelMap(std::move(names));
}

std::vector<std::string> LabelMap::labels() const {
  std::vector<std::string> all = main_;
  all.emplace_back(kOtherLabel);
  return all;
}

std::string LabelMap::label_for(std::string_view speaker) const {
  auto it = lookup_.find(speaker);
  return it != lookup_.end() ? *it : std::string(kOtherLabel);
}

LabeledCorpus apply_labels(Corpus corpus, const LabelMap &label_map) {
  for (Scene &scene : corpus.scenes) {
    for (Turn &turn : scene.turns) turn.label = label_map.label_for(turn.speaker);
  }
  return LabeledCorpus{std::move(corpus), label_map};
}

std::string make_speaker_token(std::string_view name) {
  std::string body;
  bool has_alnum = false;
  for (char c : name) {
    char u = (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
    bool alnum = (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9');
    if (alnum) {
      body.push_back(u);
      has_alnum = true;
    } else if (!body.empty() && body.back() != '_') {
      body.push_back('_');
    }
  }
  if (!has_alnum) {
    throw DataError("speaker name '" + std::string(name) + "' has no alphanumeric characters");
  }
  if (body.back() == '_') body.pop_back();
  return "[" + body + "]";
}

}  // namespace spkffp
