// src/eval.cpp

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

#include "spkffp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

#include "spkffp/diagnostics.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/text.hpp"

namespace spkffp {

std::vector<ScoredSample> classify_all(std::span<const LabeledVector> samples,
                                       const FingerprintLibrary &library,
                                       const std::optional<GenericOptions> &generic) {
  std::vector<ScoredSample> out;
  out.reserve(samples.size());
  for (const LabeledVector &lv : samples) {
    ScoredSample s;
    s.sample_id = lv.sample_id;
    s.gold = lv.label;
    try {
      s.result = classify(lv.features, library, lv.sample_id);
    } catch (const FeaturelessSampleError &) {
      s.featureless = true;
      s.result.sample_id = lv.sample_id;
    }
    if (!s.featureless && generic) {
      s.generic = detect_generic(s.result, generic->top_n, generic->tau);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string scored_to_json_line(const ScoredSample &sample) {
  nlohmann::ordered_json j;
  j["id"] = sample.sample_id;
  j["gold"] = sample.gold;
  if (sample.featureless) {
    j["pred"] = nullptr;
    j["featureless"] = true;
    return j.dump();
  }
  j["pred"] = sample.result.predicted;
  nlohmann::ordered_json scores = nlohmann::ordered_json::object();
  for (const auto &[label, score] : sample.result.scores) scores[label] = score;
  j["scores"] = std::move(scores);
  j["margin_top2"] = sample.result.margin_top2;
  if (sample.generic) {
    nlohmann::ordered_json g;
    g["top_n"] = sample.generic->top_n;
    g["tau"] = sample.generic->tau;
    g["flag"] = sample.generic->is_generic;
    j["generic"] = std::move(g);
  }
  return j.dump();
}

std::vector<ScoredSample> parse_scored_text(std::string_view contents) {
  std::vector<ScoredSample> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      ScoredSample s;
      s.sample_id = j.at("id").get<std::string>();
      s.gold = j.at("gold").get<std::string>();
      s.result.sample_id = s.sample_id;
      if (j.at("pred").is_null()) {
        s.featureless = true;
      } else {
        s.result.predicted = j.at("pred").get<std::string>();
        for (const auto &[label, score] : j.at("scores").items()) {
          s.result.scores.emplace(label, score.get<double>());
        }
        s.result.margin_top2 = j.at("margin_top2").get<double>();
        if (auto g = j.find("generic"); g != j.end()) {
          GenericVerdict v;
          v.sample_id = s.sample_id;
          v.top_n = g->at("top_n").get<std::size_t>();
          v.tau = g->at("tau").get<double>();
          v.is_generic = g->at("flag").get<bool>();
          s.generic = v;
        }
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw DataError("classification line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_scored(std::span<const ScoredSample> samples, const std::string &path) {
  std::string out;
  for (const ScoredSample &s : samples) {
    out += scored_to_json_line(s);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<ScoredSample> read_scored(const std::string &path) {
  return parse_scored_text(read_file(path));
}

// ---------------------------------------------------------------------------

MetricsReport score(std::span<const ScoredSample> samples,
                    const std::vector<std::string> &classes) {
  if (samples.empty()) throw DataError("cannot score an empty result list");
  MetricsReport report;
  report.classes = classes;
  std::set<std::string> known(classes.begin(), classes.end());
  if (known.size() != classes.size()) throw DataError("duplicate class in class list");
  std::set<std::string> extra;
  for (const ScoredSample &s : samples) {
    if (s.featureless) {
      ++report.n_featureless;
      continue;
    }
    if (!known.count(s.gold)) extra.insert(s.gold);
    if (!known.count(s.result.predicted)) extra.insert(s.result.predicted);
  }
  report.classes.insert(report.classes.end(), extra.begin(), extra.end());

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < report.classes.size(); ++i) index[report.classes[i]] = i;
  const std::size_t n_classes = report.classes.size();
  report.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
  std::size_t correct = 0;
  for (const ScoredSample &s : samples) {
    if (s.featureless) continue;
    const std::size_t g = index.at(s.gold);
    const std::size_t p = index.at(s.result.predicted);
    ++report.confusion[g][p];
    ++report.n_samples;
    if (g == p) ++correct;
  }
  if (report.n_samples == 0) throw DataError("every sample is featureless; nothing to score");
  report.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(report.n_samples);

  double macro_sum = 0.0;
  std::size_t macro_count = 0;
  double weighted_sum = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t row = 0;
    std::size_t col = 0;
    for (std::size_t o = 0; o < n_classes; ++o) {
      row += report.confusion[c][o];
      col += report.confusion[o][c];
    }
    const double tp = static_cast<double>(report.confusion[c][c]);
    const double precision = col ? tp / static_cast<double>(col) : 0.0;
    const double recall = row ? tp / static_cast<double>(row) : 0.0;
    const double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall)
                                               : 0.0;
    const std::string &label = report.classes[c];
    report.per_class_precision[label] = 100.0 * precision;
    report.per_class_recall[label] = 100.0 * recall;
    report.per_class_f1[label] = 100.0 * f1;
    report.support[label] = row;
    if (row + col > 0) {
      macro_sum += 100.0 * f1;
      ++macro_count;
    }
    weighted_sum += 100.0 * f1 * static_cast<double>(row);
  }
  report.macro_f1 = macro_count ? macro_sum / static_cast<double>(macro_count) : 0.0;
  report.weighted_f1 = weighted_sum / static_cast<double>(report.n_samples);
  return report;
}

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

std::string metrics_to_json(const MetricsReport &report) {
  nlohmann::ordered_json j;
  j["n_samples"] = report.n_samples;
  j["n_featureless"] = report.n_featureless;
  j["accuracy"] = round2(report.accuracy);
  j["macro_f1"] = round2(report.macro_f1);
  j["weighted_f1"] = round2(report.weighted_f1);
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const std::string &label : report.classes) {
    nlohmann::ordered_json c;
    c["f1"] = round2(report.per_class_f1.at(label));
    c["precision"] = round2(report.per_class_precision.at(label));
    c["recall"] = round2(report.per_class_recall.at(label));
    c["support"] = report.support.at(label);
    per_class[label] = std::move(c);
  }
  j["per_class"] = std::move(per_class);
  j["classes"] = report.classes;
  j["confusion"] = report.confusion;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string confusion_csv(const MetricsReport &report) {
  std::string out = "gold\\pred";
  for (const std::string &label : report.classes) out += "," + csv_field(label);
  out += '\n';
  for (std::size_t r = 0; r < report.classes.size(); ++r) {
    out += csv_field(report.classes[r]);
    for (std::size_t value : report.confusion[r]) out += "," + std::to_string(value);
    out += '\n';
  }
  return out;
}

std::string per_class_csv(const MetricsReport &report) {
  std::string out = "class,precision,recall,f1,support\n";
  for (const std::string &label : report.classes) {
    out += csv_field(label) + "," + format_fixed(report.per_class_precision.at(label), 2) + "," +
           format_fixed(report.per_class_recall.at(label), 2) + "," +
           format_fixed(report.per_class_f1.at(label), 2) + "," +
           std::to_string(report.support.at(label)) + "\n";
  }
  out += "accuracy,,," + format_fixed(report.accuracy, 2) + "," +
         std::to_string(report.n_samples) + "\n";
  out += "macro_f1,,," + format_fixed(report.macro_f1, 2) + ",\n";
  out += "weighted_f1,,," + format_fixed(report.weighted_f1, 2) + ",\n";
  return out;
}

// ---------------------------------------------------------------------------

LengthHistogram length_histogram(std::span<const ScoredSample> samples,
                                 const std::map<std::string, std::size_t> &target_lengths,
                                 std::size_t bin_width, std::size_t cap) {
  if (bin_width == 0) throw DataError("histogram bin width must be >= 1");
  LengthHistogram h;
  h.bin_width = bin_width;
  const std::size_t n_bins = cap / bin_width + 1;
  for (std::size_t b = 0; b < n_bins; ++b) h.bin_start.push_back(b * bin_width);
  h.correct_counts.assign(n_bins, 0);
  h.incorrect_counts.assign(n_bins, 0);
  std::size_t n_correct = 0;
  std::size_t n_incorrect = 0;
  for (const ScoredSample &s : samples) {
    if (s.featureless) continue;
    auto it = target_lengths.find(s.sample_id);
    if (it == target_lengths.end()) {
      throw DataError("no target length for sample '" + s.sample_id + "'");
    }
    const std::size_t bin = std::min(it->second, cap) / bin_width;
    if (s.result.predicted == s.gold) {
      ++h.correct_counts[bin];
      ++n_correct;
    } else {
      ++h.incorrect_counts[bin];
      ++n_incorrect;
    }
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.correct_freq.push_back(n_correct ? static_cast<double>(h.correct_counts[b]) /
                                             static_cast<double>(n_correct)
                                       : 0.0);
    h.incorrect_freq.push_back(n_incorrect ? static_cast<double>(h.incorrect_counts[b]) /
                                                 static_cast<double>(n_incorrect)
                                           : 0.0);
  }
  return h;
}

std::string histogram_csv(const LengthHistogram &histogram) {
  std::string out = "length,correct_freq,incorrect_freq\n";
  for (std::size_t b = 0; b < histogram.bin_start.size(); ++b) {
    out += std::to_string(histogram.bin_start[b]) + "," +
           format_fixed(histogram.correct_freq[b], 6) + "," +
           format_fixed(histogram.incorrect_freq[b], 6) + "\n";
  }
  return out;
}

std::vector<GenericCurvePoint> generic_curve(std::span<const ScoredSample> samples,
                                             std::size_t top_n, const std::vector<double> &taus) {
  if (taus.empty()) throw DataError("tau grid is empty");
  std::vector<double> sorted_taus = taus;
  std::sort(sorted_taus.begin(), sorted_taus.end());
  std::vector<GenericCurvePoint> points;
  for (double tau : sorted_taus) {
    GenericCurvePoint point;
    point.tau = tau;
    point.top_n = top_n;
    std::size_t kept = 0;
    std::size_t correct = 0;
    for (const ScoredSample &s : samples) {
      if (s.featureless) continue;
      if (detect_generic(s.result, top_n, tau).is_generic) {
        ++point.removed;
        continue;
      }
      ++kept;
      if (s.result.predicted == s.gold) ++correct;
    }
    if (kept > 0) {
      point.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(kept);
    }
    points.push_back(point);
  }
  return points;
}

std::string generic_curve_csv(std::span<const GenericCurvePoint> points) {
  std::string out = "tau,top_n,removed,accuracy\n";
  char tau[32];
  for (const GenericCurvePoint &p : points) {
    std::snprintf(tau, sizeof(tau), "%.6g", p.tau);
    out += std::string(tau) + "," + std::to_string(p.top_n) + "," + std::to_string(p.removed) +
           "," + (p.accuracy ? format_fixed(*p.accuracy, 2) : std::string()) + "\n";
  }
  return out;
}

std::vector<double> parse_tau_grid(std::string_view spec) {
  std::vector<std::string> parts = split(spec, ':');
  auto number = [&spec](const std::string &s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception &) {
      throw DataError("bad tau grid '" + std::string(spec) + "'");
    }
  };
  if (parts.size() == 1) return {number(parts[0])};
  if (parts.size() != 3) throw DataError("tau grid must be start:stop:step");
  const double start = number(parts[0]);
  const double stop = number(parts[1]);
  const double step = number(parts[2]);
  if (!(step > 0.0) || start < 0.0 || stop < start) {
    throw DataError("bad tau grid '" + std::string(spec) + "'");
  }
  std::vector<double> taus;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) taus.push_back(start + static_cast<double>(i) * step);
  return taus;
}

}  // namespace spkffp
