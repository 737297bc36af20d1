// src/library_io.cpp

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
#include <json.hpp>

#include "spkffp/errors.hpp"
#include "spkffp/fingerprint.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

namespace {
constexpr int kLibraryVersion = 1;
}  // namespace

std::string library_to_json(const FingerprintLibrary &library) {
  nlohmann::ordered_json j;
  j["version"] = kLibraryVersion;
  j["k"] = library.k();
  j["membership"] = std::string(membership_id(library.membership()));
  const double n = library.normalizer();
  if (n == std::floor(n) && n < 9.0e15) {
    j["N"] = static_cast<std::int64_t>(n);
  } else {
    j["N"] = n;
  }
  j["M"] = library.dim();
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto &[label, fp] : library.classes()) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const FingerprintEntry &e : fp.entries) {
      entries.push_back(nlohmann::ordered_json::array({e.feature, e.membership}));
    }
    classes[label] = std::move(entries);
  }
  j["classes"] = std::move(classes);
  return j.dump() + "\n";
}

FingerprintLibrary library_from_json(std::string_view text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    const int version = j.at("version").get<int>();
    if (version != kLibraryVersion) {
      throw DataError("unsupported library version " + std::to_string(version));
    }
    const auto k = j.at("k").get<std::size_t>();
    const MembershipKind kind = parse_membership(j.at("membership").get<std::string>());
    const double normalizer = j.at("N").get<double>();
    const auto dim = j.at("M").get<std::size_t>();
    std::map<std::string, FuzzyFingerprint> classes;
    for (const auto &[label, entries] : j.at("classes").items()) {
      FuzzyFingerprint fp;
      fp.label = label;
      fp.k = k;
      fp.dim = dim;
      for (const auto &entry : entries) {
        if (!entry.is_array() || entry.size() != 2) {
          throw DataError("class '" + label + "': entries must be [index, mu] pairs");
        }
        fp.entries.push_back({entry[0].get<std::uint32_t>(), entry[1].get<double>()});
      }
      classes.emplace(label, std::move(fp));
    }
    return FingerprintLibrary(k, kind, normalizer, dim, std::move(classes));
  } catch (const nlohmann::json::exception &e) {
    throw DataError(std::string("malformed library file: ") + e.what());
  }
}

void write_library(const FingerprintLibrary &library, const std::string &path) {
  write_file(path, library_to_json(library));
}

FingerprintLibrary read_library(const std::string &path) {
  return library_from_json(read_file(path));
}

}  // namespace spkffp
