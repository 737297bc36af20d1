// include/spkffp/fingerprint.hpp

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

#ifndef SPKFFP_FINGERPRINT_HPP_
#define SPKFFP_FINGERPRINT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spkffp/features.hpp"

namespace spkffp {

// ---------------------------------------------------------------------------
// Membership functions over 0-based ranks inside a fingerprint of size k.

enum class MembershipKind {
  kPareto8020,  // "pareto80_20"
  kLinear,      // "linear"
};

std::string_view membership_id(MembershipKind kind);
MembershipKind parse_membership(std::string_view id);

// 80/20 piecewise-linear shape. With b = ceil(0.2 k):
//   mu(i) = 1 - 0.8 i / b              for i < b
//   mu(i) = 0.2 (1 - (i - b) / (k - b)) for b <= i < k
// The top fifth of the ranks spans memberships (0.2, 1]; the remaining ranks
// decay linearly from 0.2 towards 0 without reaching it.
double pareto_membership(std::size_t rank, std::size_t k);

// mu(i) = 1 - i / k.
double linear_membership(std::size_t rank, std::size_t k);

double membership(MembershipKind kind, std::size_t rank, std::size_t k);

// Memberships are exact fractions numerator / denominator over a denominator
// shared by every rank of a size-k fingerprint; k is capped at kMaxExactK.
inline constexpr std::size_t kMaxExactK = std::size_t{1} << 21;
std::int64_t membership_denominator(MembershipKind kind, std::size_t k);
std::int64_t membership_numerator(MembershipKind kind, std::size_t rank, std::size_t k);

// ---------------------------------------------------------------------------

struct ClassAccumulator {
  std::string label;
  std::vector<double> sums;
  std::size_t n_samples = 0;

  // Element-wise float64 addition; the first vector fixes M.
  void add(const FeatureVector &v);
};

ClassAccumulator accumulate(std::string label, std::span<const FeatureVector> vectors);

// Feature indices sorted by value descending, ties by ascending index.
std::vector<std::uint32_t> rank_units(std::span<const double> values);

struct FingerprintEntry {
  std::uint32_t feature = 0;
  double membership = 0.0;

  friend bool operator==(const FingerprintEntry &, const FingerprintEntry &) = default;
};

// The top min(k, M) features of an activation vector in rank order.
// Memberships are evaluated at the effective size min(k, M), so any k >= M
// yields the same entries.
struct FuzzyFingerprint {
  std::string label;  // class name, or sample id for query fingerprints
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<FingerprintEntry> entries;  // rank order
  // Set when entries[r].membership is membership(kind, r, entries.size()).
  std::optional<MembershipKind> kind;
};

FuzzyFingerprint build_fingerprint(const ClassAccumulator &acc, std::size_t k,
                                   MembershipKind kind);

// Throws FeaturelessSampleError on an all-zero vector.
FuzzyFingerprint sample_fingerprint(const FeatureVector &v, std::size_t k, MembershipKind kind,
                                    std::string_view sample_id = {});

// Sum over the shared features of min(mu_a, mu_b), divided by normalizer.
// When both sides carry the same kind the sum is taken over exact numerators,
// so equal scores compare equal; otherwise terms are added in ascending
// feature order.
double similarity(const FuzzyFingerprint &a, const FuzzyFingerprint &b, double normalizer);

// ---------------------------------------------------------------------------

struct LibraryOptions {
  std::size_t k = 409;
  MembershipKind membership = MembershipKind::kPareto8020;
  std::optional<double> normalizer;  // defaults to k
};

struct LabeledVector {
  std::string sample_id;
  std::string label;
  FeatureVector features;
};

class FingerprintLibrary {
 public:
  FingerprintLibrary(std::size_t k, MembershipKind membership, double normalizer,
                     std::size_t dim, std::map<std::string, FuzzyFingerprint> classes);

  std::size_t k() const { return k_; }
  MembershipKind membership() const { return membership_; }
  double normalizer() const { return normalizer_; }
  std::size_t dim() const { return dim_; }
  const std::map<std::string, FuzzyFingerprint> &classes() const { return classes_; }

  // Dense membership row of a class (0 outside its fingerprint).
  std::span<const double> dense(const std::string &label) const;
  std::span<const std::int64_t> dense_numerators(const std::string &label) const;

 private:
  std::size_t k_;
  MembershipKind membership_;
  double normalizer_;
  std::size_t dim_;
  std::map<std::string, FuzzyFingerprint> classes_;
  std::map<std::string, std::vector<double>> dense_;
  std::map<std::string, std::vector<std::int64_t>> numerators_;
};

// One accumulator per label, fed in ascending sample_id order.
FingerprintLibrary build_library(std::span<const LabeledVector> train,
                                 const LibraryOptions &options);

std::string library_to_json(const FingerprintLibrary &library);
FingerprintLibrary library_from_json(std::string_view text);
void write_library(const FingerprintLibrary &library, const std::string &path);
FingerprintLibrary read_library(const std::string &path);

// ---------------------------------------------------------------------------

struct ClassificationResult {
  std::string sample_id;
  std::map<std::string, double> scores;
  std::string predicted;
  // Best minus second-best score; with a single class, the best score.
  double margin_top2 = 0.0;
};

// Ties on the best score go to the alphabetically first class.
ClassificationResult classify(const FuzzyFingerprint &sample, const FingerprintLibrary &library);
ClassificationResult classify(const FeatureVector &features, const FingerprintLibrary &library,
                              std::string_view sample_id);

struct GenericVerdict {
  std::string sample_id;
  std::size_t top_n = 2;
  double tau = 0.0;
  bool is_generic = false;
};

// Generic when the best score and the top_n-th best score differ by at most tau.
GenericVerdict detect_generic(const ClassificationResult &result, std::size_t top_n, double tau);

}  // namespace spkffp

#endif  // SPKFFP_FINGERPRINT_HPP_
