// src/fingerprint.cpp

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

#include "spkffp/fingerprint.hpp"

#include <algorithm>
#include <numeric>

#include "spkffp/errors.hpp"

namespace spkffp {

std::string_view membership_id(MembershipKind kind) {
  switch (kind) {
    case MembershipKind::kPareto8020:
      return "pareto80_20";
    case MembershipKind::kLinear:
      return "linear";
  }
  throw InvariantError("unknown membership kind");
}

MembershipKind parse_membership(std::string_view id) {
  if (id == "pareto80_20") return MembershipKind::kPareto8020;
  if (id == "linear") return MembershipKind::kLinear;
  throw DataError("unknown membership function '" + std::string(id) + "'");
}

namespace {

void check_rank(std::size_t rank, std::size_t k) {
  if (k == 0) throw DataError("fingerprint size k must be >= 1");
  if (rank >= k) {
    throw DataError("rank " + std::to_string(rank) + " outside fingerprint of size " +
                    std::to_string(k));
  }
}

}  // namespace

namespace {

void check_exact_size(std::size_t k) {
  if (k > kMaxExactK) {
    throw DataError("fingerprint size " + std::to_string(k) + " exceeds " +
                    std::to_string(kMaxExactK));
  }
}

std::size_t knee(std::size_t k) { return (k + 4) / 5; }  // ceil(0.2 k)

}  // namespace

// Pareto: 1 - 0.8 i/b = (5b - 4i) / 5b and 0.2 (k - i)/(k - b) = (k - i) / 5(k - b),
// both over 5b(k - b).
std::int64_t membership_denominator(MembershipKind kind, std::size_t k) {
  if (k == 0) throw DataError("fingerprint size k must be >= 1");
  check_exact_size(k);
  const auto kk = static_cast<std::int64_t>(k);
  if (kind == MembershipKind::kLinear) return kk;
  const auto b = static_cast<std::int64_t>(knee(k));
  return 5 * b * std::max<std::int64_t>(kk - b, 1);
}

std::int64_t membership_numerator(MembershipKind kind, std::size_t rank, std::size_t k) {
  check_rank(rank, k);
  check_exact_size(k);
  const auto kk = static_cast<std::int64_t>(k);
  const auto i = static_cast<std::int64_t>(rank);
  if (kind == MembershipKind::kLinear) return kk - i;
  const auto b = static_cast<std::int64_t>(knee(k));
  if (i < b) return (5 * b - 4 * i) * std::max<std::int64_t>(kk - b, 1);
  return (kk - i) * b;
}

double pareto_membership(std::size_t rank, std::size_t k) {
  return static_cast<double>(membership_numerator(MembershipKind::kPareto8020, rank, k)) /
         static_cast<double>(membership_denominator(MembershipKind::kPareto8020, k));
}

double linear_membership(std::size_t rank, std::size_t k) {
  return static_cast<double>(membership_numerator(MembershipKind::kLinear, rank, k)) /
         static_cast<double>(membership_denominator(MembershipKind::kLinear, k));
}

double membership(MembershipKind kind, std::size_t rank, std::size_t k) {
  switch (kind) {
    case MembershipKind::kPareto8020:
      return pareto_membership(rank, k);
    case MembershipKind::kLinear:
      return linear_membership(rank, k);
  }
  throw InvariantError("unknown membership kind");
}

// ---------------------------------------------------------------------------

void ClassAccumulator::add(const FeatureVector &v) {
  if (n_samples == 0) {
    sums.assign(v.dim(), 0.0);
  } else if (v.dim() != sums.size()) {
    throw DataError("class '" + label + "': feature dimension " + std::to_string(v.dim()) +
                    " does not match " + std::to_string(sums.size()));
  }
  std::span<const double> values = v.values();
  for (std::size_t i = 0; i < values.size(); ++i) sums[i] += values[i];
  ++n_samples;
}

ClassAccumulator accumulate(std::string label, std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw DataError("class '" + label + "' has no feature vectors");
  ClassAccumulator acc;
  acc.label = std::move(label);
  for (const FeatureVector &v : vectors) acc.add(v);
  return acc;
}

std::vector<std::uint32_t> rank_units(std::span<const double> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::uint32_t a, std::uint32_t b) { return values[a] > values[b]; });
  return order;
}

namespace {

FuzzyFingerprint fingerprint_from_values(std::string label, std::span<const double> values,
                                         std::size_t k, MembershipKind kind) {
  if (k == 0) throw DataError("fingerprint size k must be >= 1");
  FuzzyFingerprint fp;
  fp.label = std::move(label);
  fp.k = k;
  fp.dim = values.size();
  const std::size_t size = std::min(k, values.size());
  std::vector<std::uint32_t> order = rank_units(values);
  fp.entries.reserve(size);
  for (std::size_t r = 0; r < size; ++r) {
    fp.entries.push_back({order[r], membership(kind, r, size)});
  }
  fp.kind = kind;
  return fp;
}

bool all_zero(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::vector<FingerprintEntry> by_feature(const FuzzyFingerprint &fp) {
  std::vector<FingerprintEntry> sorted = fp.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const FingerprintEntry &a, const FingerprintEntry &b) { return a.feature < b.feature; });
  return sorted;
}

void check_normalizer(double normalizer) {
  if (!(normalizer > 0.0)) throw DataError("similarity normalizer N must be > 0");
}

double exact_score(std::int64_t total, std::int64_t denominator, double normalizer) {
  return static_cast<double>(total) / (static_cast<double>(denominator) * normalizer);
}

}  // namespace

FuzzyFingerprint build_fingerprint(const ClassAccumulator &acc, std::size_t k,
                                   MembershipKind kind) {
  if (acc.n_samples == 0) throw DataError("class '" + acc.label + "' has no samples");
  if (acc.sums.empty() || all_zero(acc.sums)) {
    throw DataError("class '" + acc.label + "' has an all-zero accumulated vector");
  }
  return fingerprint_from_values(acc.label, acc.sums, k, kind);
}

FuzzyFingerprint sample_fingerprint(const FeatureVector &v, std::size_t k, MembershipKind kind,
                                    std::string_view sample_id) {
  if (v.dim() == 0 || v.is_zero()) throw FeaturelessSampleError(std::string(sample_id));
  return fingerprint_from_values(std::string(sample_id), v.values(), k, kind);
}

double similarity(const FuzzyFingerprint &a, const FuzzyFingerprint &b, double normalizer) {
  check_normalizer(normalizer);
  if (a.k != b.k) {
    throw DataError("fingerprint sizes differ: " + std::to_string(a.k) + " vs " +
                    std::to_string(b.k));
  }
  if (a.dim != b.dim) {
    throw DataError("feature dimensions differ: " + std::to_string(a.dim) + " vs " +
                    std::to_string(b.dim));
  }
  if (a.kind && a.kind == b.kind && a.entries.size() == b.entries.size()) {
    const MembershipKind kind = *a.kind;
    const std::size_t size = a.entries.size();
    std::vector<std::int64_t> row(a.dim, 0);
    for (std::size_t r = 0; r < size; ++r) {
      row[a.entries[r].feature] = membership_numerator(kind, r, size);
    }
    std::int64_t total = 0;
    for (std::size_t r = 0; r < size; ++r) {
      const std::int64_t other = row[b.entries[r].feature];
      if (other > 0) total += std::min(other, membership_numerator(kind, r, size));
    }
    return exact_score(total, membership_denominator(kind, size), normalizer);
  }
  std::vector<FingerprintEntry> x = by_feature(a);
  std::vector<FingerprintEntry> y = by_feature(b);
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].feature < y[j].feature) {
      ++i;
    } else if (y[j].feature < x[i].feature) {
      ++j;
    } else {
      total += std::min(x[i].membership, y[j].membership);
      ++i;
      ++j;
    }
  }
  return total / normalizer;
}

// ---------------------------------------------------------------------------

FingerprintLibrary::FingerprintLibrary(std::size_t k, MembershipKind membership,
                                       double normalizer, std::size_t dim,
                                       std::map<std::string, FuzzyFingerprint> classes)
    : k_(k), membership_(membership), normalizer_(normalizer), dim_(dim),
      classes_(std::move(classes)) {
  if (k_ == 0) throw DataError("fingerprint size k must be >= 1");
  check_normalizer(normalizer_);
  if (classes_.empty()) throw DataError("fingerprint library has no classes");
  for (auto &[label, fp] : classes_) {
    if (fp.label != label) throw DataError("library entry '" + label + "' is mislabeled");
    if (fp.k != k_ || fp.dim != dim_) {
      throw DataError("class '" + label + "' does not share the library's k and M");
    }
    if (fp.entries.size() != std::min(k_, dim_)) {
      throw DataError("class '" + label + "' has " + std::to_string(fp.entries.size()) +
                      " entries, expected " + std::to_string(std::min(k_, dim_)));
    }
    if (fp.kind && *fp.kind != membership_) {
      throw DataError("class '" + label + "' was built with another membership function");
    }
    const std::size_t size = fp.entries.size();
    std::vector<double> row(dim_, 0.0);
    std::vector<std::int64_t> numerators(dim_, 0);
    for (std::size_t r = 0; r < size; ++r) {
      const FingerprintEntry &e = fp.entries[r];
      if (e.feature >= dim_) throw DataError("class '" + label + "' feature out of range");
      if (row[e.feature] != 0.0) throw DataError("class '" + label + "' repeats a feature");
      if (e.membership != spkffp::membership(membership_, r, size)) {
        throw DataError("class '" + label + "' membership at rank " + std::to_string(r) +
                        " does not match " + std::string(membership_id(membership_)));
      }
      row[e.feature] = e.membership;
      numerators[e.feature] = membership_numerator(membership_, r, size);
    }
    fp.kind = membership_;
    dense_.emplace(label, std::move(row));
    numerators_.emplace(label, std::move(numerators));
  }
}

std::span<const double> FingerprintLibrary::dense(const std::string &label) const {
  auto it = dense_.find(label);
  if (it == dense_.end()) throw DataError("unknown class '" + label + "'");
  return it->second;
}

std::span<const std::int64_t> FingerprintLibrary::dense_numerators(
    const std::string &label) const {
  auto it = numerators_.find(label);
  if (it == numerators_.end()) throw DataError("unknown class '" + label + "'");
  return it->second;
}

FingerprintLibrary build_library(std::span<const LabeledVector> train,
                                 const LibraryOptions &options) {
  if (train.empty()) throw DataError("cannot build a library from an empty training set");
  std::vector<const LabeledVector *> ordered;
  ordered.reserve(train.size());
  for (const LabeledVector &lv : train) ordered.push_back(&lv);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const LabeledVector *a, const LabeledVector *b) {
                     return a->sample_id < b->sample_id;
                   });
  std::map<std::string, ClassAccumulator> accumulators;
  for (const LabeledVector *lv : ordered) {
    ClassAccumulator &acc = accumulators[lv->label];
    acc.label = lv->label;
    acc.add(lv->features);
  }
  const std::size_t dim = ordered.front()->features.dim();
  std::map<std::string, FuzzyFingerprint> classes;
  for (const auto &[label, acc] : accumulators) {
    if (acc.sums.size() != dim) throw DataError("class '" + label + "' has a different M");
    classes.emplace(label, build_fingerprint(acc, options.k, options.membership));
  }
  const double normalizer = options.normalizer.value_or(static_cast<double>(options.k));
  return FingerprintLibrary(options.k, options.membership, normalizer, dim, std::move(classes));
}

// ---------------------------------------------------------------------------

ClassificationResult classify(const FuzzyFingerprint &sample, const FingerprintLibrary &library) {
  if (sample.k != library.k() || sample.dim != library.dim()) {
    throw DataError("sample fingerprint does not match the library's k and M");
  }
  const std::size_t size = sample.entries.size();
  const bool exact = sample.kind == library.membership() && size == std::min(library.k(), library.dim());
  std::vector<FingerprintEntry> entries = by_feature(sample);
  std::vector<std::int64_t> sample_numerators;
  if (exact) {
    for (std::size_t r = 0; r < size; ++r) {
      sample_numerators.push_back(membership_numerator(library.membership(), r, size));
    }
  }
  const std::int64_t denominator =
      exact ? membership_denominator(library.membership(), size) : 1;
  ClassificationResult result;
  result.sample_id = sample.label;
  double best = -1.0;
  double second = -1.0;
  for (const auto &[label, fp] : library.classes()) {
    double score = 0.0;
    if (exact) {
      std::span<const std::int64_t> row = library.dense_numerators(label);
      std::int64_t total = 0;
      for (std::size_t r = 0; r < size; ++r) {
        const std::int64_t other = row[sample.entries[r].feature];
        if (other > 0) total += std::min(other, sample_numerators[r]);
      }
      score = exact_score(total, denominator, library.normalizer());
    } else {
      std::span<const double> row = library.dense(label);
      double total = 0.0;
      for (const FingerprintEntry &e : entries) {
        const double mu = row[e.feature];
        if (mu > 0.0) total += std::min(e.membership, mu);
      }
      score = total / library.normalizer();
    }
    result.scores.emplace(label, score);
    if (score > best) {
      second = best;
      best = score;
      result.predicted = label;
    } else if (score > second) {
      second = score;
    }
  }
  result.margin_top2 = library.classes().size() > 1 ? best - second : best;
  return result;
}

ClassificationResult classify(const FeatureVector &features, const FingerprintLibrary &library,
                              std::string_view sample_id) {
  if (features.dim() != library.dim()) {
    throw DataError("sample '" + std::string(sample_id) + "' has dimension " +
                    std::to_string(features.dim()) + ", library expects " +
                    std::to_string(library.dim()));
  }
  return classify(sample_fingerprint(features, library.k(), library.membership(), sample_id),
                  library);
}

GenericVerdict detect_generic(const ClassificationResult &result, std::size_t top_n, double tau) {
  if (top_n < 2 || top_n > 4) throw DataError("top_n must be 2, 3 or 4");
  if (!(tau >= 0.0)) throw DataError("tau must be >= 0");
  if (result.scores.size() < top_n) {
    throw DataError("generic detection with top_n = " + std::to_string(top_n) + " needs at least " +
                    std::to_string(top_n) + " classes");
  }
  std::vector<double> scores;
  scores.reserve(result.scores.size());
  for (const auto &[label, score] : result.scores) scores.push_back(score);
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(top_n),
                    scores.end(), std::greater<>());
  GenericVerdict verdict;
  verdict.sample_id = result.sample_id;
  verdict.top_n = top_n;
  verdict.tau = tau;
  verdict.is_generic = (scores[0] - scores[top_n - 1]) <= tau;
  return verdict;
}

}  // namespace spkffp
