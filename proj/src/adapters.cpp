// src/adapters.cpp

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
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <regex>

#include "spkffp/corpus.hpp"
#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const json &require(const json &obj, const char *field, const char *context) {
  if (!obj.is_object()) {
    throw DataError(std::string("friends adapter: expected object for ") + context);
  }
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw DataError(std::string("friends adapter: missing field '") + field + "' in " + context);
  }
  return *it;
}

std::optional<int> season_number(std::string_view season_id) {
  // "s01" -> 1
  std::size_t i = 0;
  while (i < season_id.size() && !(season_id[i] >= '0' && season_id[i] <= '9')) ++i;
  if (i == season_id.size()) return std::nullopt;
  int value = 0;
  for (; i < season_id.size() && season_id[i] >= '0' && season_id[i] <= '9'; ++i) {
    value = value * 10 + (season_id[i] - '0');
  }
  if (value < 1) return std::nullopt;
  return value;
}

struct DropCounts {
  std::size_t no_speaker = 0;
  std::size_t empty_text = 0;
  std::size_t empty_scenes = 0;
};

void report(const char *adapter, const DropCounts &drops) {
  if (drops.no_speaker) {
    warn(std::string(adapter) + ": dropped " + std::to_string(drops.no_speaker) +
         " utterances without a speaker");
  }
  if (drops.empty_text) {
    warn(std::string(adapter) + ": dropped " + std::to_string(drops.empty_text) +
         " utterances with empty text");
  }
  if (drops.empty_scenes) {
    warn(std::string(adapter) + ": dropped " + std::to_string(drops.empty_scenes) +
         " scenes without usable turns");
  }
}

void append_friends_season_checked(const json &season, Corpus &corpus, DropCounts &drops) {
  const json &season_id = require(season, "season_id", "season");
  const json &episodes = require(season, "episodes", "season");
  if (!season_id.is_string() || !episodes.is_array()) {
    throw DataError("friends adapter: malformed season record");
  }
  std::optional<int> season_no = season_number(season_id.get<std::string>());
  for (const json &episode : episodes) {
    const json &episode_id = require(episode, "episode_id", "episode");
    const json &scenes = require(episode, "scenes", "episode");
    for (const json &scene_json : scenes) {
      Scene scene;
      scene.scene_id = require(scene_json, "scene_id", "scene").get<std::string>();
      scene.season = season_no;
      scene.episode = episode_id.get<std::string>();
      for (const json &utterance : require(scene_json, "utterances", "scene")) {
        const json &speakers = require(utterance, "speakers", "utterance");
        const json &transcript = require(utterance, "transcript", "utterance");
        std::string speaker;
        for (const json &s : speakers) {
          speaker = normalize_whitespace(s.get<std::string>());
          if (!speaker.empty()) break;
        }
        if (speaker.empty()) {
          ++drops.no_speaker;
          continue;
        }
        std::string text = transcript.get<std::string>();
        if (trim(text).empty()) {
          ++drops.empty_text;
          continue;
        }
        Turn turn;
        turn.speaker = std::move(speaker);
        turn.text = std::string(trim(text));
        turn.index = scene.turns.size();
        scene.turns.push_back(std::move(turn));
      }
      if (scene.turns.empty()) {
        ++drops.empty_scenes;
        continue;
      }
      corpus.scenes.push_back(std::move(scene));
    }
  }
}

void append_friends_season(const json &season, Corpus &corpus, DropCounts &drops) {
  try {
    append_friends_season_checked(season, corpus, drops);
  } catch (const json::type_error &e) {
    throw DataError(std::string("friends adapter: unexpected field type: ") + e.what());
  }
}

json parse_json_or_throw(std::string_view text, const std::string &what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw DataError("friends adapter: malformed JSON in " + what + ": " + e.what());
  }
}

// RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field.push_back(c);
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
    } else {
      field.push_back(c);
      field_started = true;
    }
    ++i;
  }
  if (quoted) throw DataError("bbt adapter: unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string two_digits(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", v);
  return buf;
}

}  // namespace

std::string adapt_friends_text(std::string_view json_text) {
  json root = parse_json_or_throw(json_text, "input");
  Corpus corpus;
  DropCounts drops;
  if (root.is_array()) {
    for (const json &season : root) append_friends_season(season, corpus, drops);
  } else {
    append_friends_season(root, corpus, drops);
  }
  report("friends adapter", drops);
  validate_corpus(corpus);
  return to_canonical_jsonl(corpus);
}

std::string adapt_friends(const std::string &path) {
  if (!fs::is_directory(path)) return adapt_friends_text(read_file(path));
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("friends adapter: no .json files in " + path);
  Corpus corpus;
  DropCounts drops;
  for (const fs::path &file : files) {
    json root = parse_json_or_throw(read_file(file.string()), file.string());
    if (root.is_array()) {
      for (const json &season : root) append_friends_season(season, corpus, drops);
    } else {
      append_friends_season(root, corpus, drops);
    }
  }
  report("friends adapter", drops);
  validate_corpus(corpus);
  return to_canonical_jsonl(corpus);
}

std::string adapt_bbt_text(std::string_view csv_text) {
  auto rows = parse_csv(csv_text);
  if (rows.empty()) throw DataError("bbt adapter: missing header row");
  const auto &header = rows.front();
  auto column = [&header](const char *name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw DataError(std::string("bbt adapter: missing field '") + name + "'");
  };
  const std::size_t episode_col = column("episode_name");
  const std::size_t dialogue_col = column("dialogue");
  const std::size_t person_col = column("person_scene");
  const std::size_t width = std::max({episode_col, dialogue_col, person_col}) + 1;

  static const std::regex series_re(R"(Series\s+(\d+)\s+Episode\s+(\d+))",
                                    std::regex::icase);
  std::map<std::string, std::string> episode_ids;           // name -> id
  std::map<std::string, std::optional<int>> episode_season;  // id -> season
  std::map<std::string, int> scene_counter;                 // id -> last scene no
  Corpus corpus;
  std::optional<std::size_t> open_scene;
  std::string open_episode;
  DropCounts drops;

  auto open_new_scene = [&](const std::string &episode_id) {
    int n = ++scene_counter[episode_id];
    Scene scene;
    scene.scene_id = episode_id + "_c" + two_digits(n);
    scene.season = episode_season[episode_id];
    scene.episode = episode_id;
    corpus.scenes.push_back(std::move(scene));
    open_scene = corpus.scenes.size() - 1;
    open_episode = episode_id;
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.size() < width) {
      throw DataError("bbt adapter: row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected " + std::to_string(width));
    }
    std::string episode_name = normalize_whitespace(row[episode_col]);
    auto [it, inserted] = episode_ids.try_emplace(episode_name);
    if (inserted) {
      std::smatch m;
      if (std::regex_search(episode_name, m, series_re)) {
        int season = std::stoi(m[1].str());
        int episode = std::stoi(m[2].str());
        it->second = "s" + two_digits(season) + "e" + two_digits(episode);
        episode_season[it->second] = season >= 1 ? std::optional<int>(season) : std::nullopt;
      } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "ep%03zu", episode_ids.size());
        it->second = buf;
        episode_season[it->second] = std::nullopt;
      }
    }
    const std::string &episode_id = it->second;
    std::string person = normalize_whitespace(row[person_col]);
    if (person == "Scene") {
      open_new_scene(episode_id);
      continue;
    }
    if (person.empty()) {
      ++drops.no_speaker;
      continue;
    }
    if (trim(row[dialogue_col]).empty()) {
      ++drops.empty_text;
      continue;
    }
    if (!open_scene || open_episode != episode_id) open_new_scene(episode_id);
    Scene &scene = corpus.scenes[*open_scene];
    Turn turn;
    turn.speaker = std::move(person);
    turn.text = std::string(trim(row[dialogue_col]));
    turn.index = scene.turns.size();
    scene.turns.push_back(std::move(turn));
  }

  std::vector<Scene> kept;
  for (Scene &scene : corpus.scenes) {
    if (scene.turns.empty()) {
      ++drops.empty_scenes;
    } else {
      kept.push_back(std::move(scene));
    }
  }
  corpus.scenes = std::move(kept);
  report("bbt adapter", drops);
  validate_corpus(corpus);
  return to_canonical_jsonl(corpus);
}

std::string adapt_bbt(const std::string &path) { return adapt_bbt_text(read_file(path)); }

}  // namespace spkffp
