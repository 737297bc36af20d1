// src/activation_file.cpp

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

#include <bit>
#include <cmath>
#include <cstring>
#include <json.hpp>
#include <limits>
#include <set>

#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/features.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace {

constexpr char kMagic[4] = {'F', 'F', 'P', 'A'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void put_le(std::string &out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get_le(const std::string &what) {
    need(sizeof(T), what);
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    return value;
  }

  std::string_view take(std::size_t n, const std::string &what) {
    need(n, what);
    std::string_view v = bytes_.substr(pos_, n);
    pos_ += n;
    return v;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n, const std::string &what) const {
    if (bytes_.size() - pos_ < n) throw DataError("activation file truncated: " + what);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string record_label(std::size_t i) { return "record " + std::to_string(i); }

void check_record(const ActivationRecord &rec, std::size_t i, std::size_t dim,
                  std::set<std::string> &seen) {
  if (rec.values.size() != dim) {
    throw DataError(record_label(i) + ": length " + std::to_string(rec.values.size()) +
                    " does not match M = " + std::to_string(dim));
  }
  for (float v : rec.values) {
    if (!std::isfinite(v)) throw DataError(record_label(i) + ": non-finite value");
  }
  if (!seen.insert(rec.sample_id).second) {
    throw DataError(record_label(i) + ": duplicate id '" + rec.sample_id + "'");
  }
}

std::vector<ActivationRecord> decode_jsonl(std::string_view text, std::size_t *dim_out) {
  std::vector<ActivationRecord> records;
  std::set<std::string> seen;
  std::size_t dim = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (trim(line).empty()) continue;
    const std::size_t i = records.size();
    ActivationRecord rec;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      rec.sample_id = j.at("id").get<std::string>();
      for (const auto &v : j.at("vec")) {
        double d = v.get<double>();
        if (!std::isfinite(d)) throw DataError(record_label(i) + ": non-finite value");
        rec.values.push_back(static_cast<float>(d));
      }
    } catch (const nlohmann::json::exception &e) {
      throw DataError(record_label(i) + ": " + e.what());
    }
    if (i == 0) dim = rec.values.size();
    check_record(rec, i, dim, seen);
    records.push_back(std::move(rec));
  }
  if (records.empty()) warn("activation file contains no records");
  if (dim_out) *dim_out = dim;
  return records;
}

bool has_jsonl_extension(const std::string &path) {
  return path.size() >= 6 && path.compare(path.size() - 6, 6, ".jsonl") == 0;
}

}  // namespace

std::string encode_activations(std::size_t dim, std::span<const ActivationRecord> records) {
  if (dim > std::numeric_limits<std::uint32_t>::max()) throw DataError("M too large");
  std::string out(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(kVersion));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  put_le<std::uint64_t>(out, records.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ActivationRecord &rec = records[i];
    check_record(rec, i, dim, seen);
    if (rec.sample_id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw DataError(record_label(i) + ": id too long");
    }
    put_le<std::uint16_t>(out, static_cast<std::uint16_t>(rec.sample_id.size()));
    out += rec.sample_id;
    for (float v : rec.values) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

void write_activations(const std::string &path, std::size_t dim,
                       std::span<const ActivationRecord> records) {
  write_file(path, encode_activations(dim, records));
}

std::vector<ActivationRecord> decode_activations(std::string_view bytes, std::size_t *dim_out) {
  Reader in(bytes);
  std::string_view magic = in.take(4, "header");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw DataError("activation file: bad magic");
  const auto version = in.get_le<std::uint8_t>("header");
  if (version != kVersion) {
    throw DataError("activation file: unsupported version " + std::to_string(version));
  }
  const auto dim = in.get_le<std::uint32_t>("header");
  const auto count = in.get_le<std::uint64_t>("header");
  std::vector<ActivationRecord> records;
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string label = record_label(i);
    ActivationRecord rec;
    const auto id_len = in.get_le<std::uint16_t>(label);
    rec.sample_id = std::string(in.take(id_len, label));
    rec.values.resize(dim);
    for (std::uint32_t d = 0; d < dim; ++d) {
      rec.values[d] = std::bit_cast<float>(in.get_le<std::uint32_t>(label));
    }
    check_record(rec, i, dim, seen);
    records.push_back(std::move(rec));
  }
  if (!in.done()) throw DataError("activation file: trailing bytes after record " +
                                  std::to_string(count));
  if (count == 0) warn("activation file contains no records");
  if (dim_out) *dim_out = dim;
  return records;
}

std::vector<ActivationRecord> read_activation_records(const std::string &path,
                                                      std::size_t *dim) {
  std::string bytes = read_file(path);
  try {
    if (has_jsonl_extension(path)) return decode_jsonl(bytes, dim);
    return decode_activations(bytes, dim);
  } catch (const DataError &e) {
    throw DataError(path + ": " + e.what());
  }
}

ActivationSet read_activations(const std::string &path) {
  ActivationSet set;
  auto records = read_activation_records(path, &set.dim);
  for (ActivationRecord &rec : records) {
    std::vector<double> values(rec.values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = std::fabs(static_cast<double>(rec.values[i]));
    }
    set.vectors.emplace(std::move(rec.sample_id), FeatureVector(std::move(values)));
  }
  return set;
}

}  // namespace spkffp
