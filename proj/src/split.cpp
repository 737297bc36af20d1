// src/split.cpp

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
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "spkffp/corpus.hpp"
#include "spkffp/errors.hpp"

namespace spkffp {
namespace {

// Uniform draw in [0, bound) by rejection on raw mt19937_64 output; unlike
// std::uniform_int_distribution the result is identical on every standard
// library.
std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void sort_by_id(Corpus &corpus) {
  std::sort(corpus.scenes.begin(), corpus.scenes.end(),
            [](const Scene &a, const Scene &b) { return a.scene_id < b.scene_id; });
}

}  // namespace

CorpusSplits split(const Corpus &corpus, const SplitSpec &spec) {
  CorpusSplits out;
  if (spec.mode == SplitSpec::Mode::kBySeason) {
    for (int s : spec.valid_seasons) {
      if (spec.test_seasons.count(s)) {
        throw DataError("season " + std::to_string(s) + " is in both valid and test");
      }
    }
    for (const Scene &scene : corpus.scenes) {
      if (!scene.season) {
        throw DataError("by-season split: scene '" + scene.scene_id + "' has no season");
      }
      if (spec.valid_seasons.count(*scene.season)) {
        out.valid.scenes.push_back(scene);
      } else if (spec.test_seasons.count(*scene.season)) {
        out.test.scenes.push_back(scene);
      } else {
        out.train.scenes.push_back(scene);
      }
    }
  } else {
    const double total = spec.train_ratio + spec.valid_ratio + spec.test_ratio;
    if (spec.train_ratio < 0 || spec.valid_ratio < 0 || spec.test_ratio < 0 || !(total > 0)) {
      throw DataError("split ratios must be non-negative with a positive sum");
    }
    const std::size_t n = corpus.scenes.size();
    const auto n_valid = static_cast<std::size_t>(std::llround(n * spec.valid_ratio / total));
    const auto n_test = static_cast<std::size_t>(std::llround(n * spec.test_ratio / total));
    if (n_valid + n_test > n) throw DataError("split ratios exceed the scene count");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[bounded(rng, i)]);
    }
    for (std::size_t pos = 0; pos < n; ++pos) {
      const Scene &scene = corpus.scenes[order[pos]];
      if (pos < n_valid) {
        out.valid.scenes.push_back(scene);
      } else if (pos < n_valid + n_test) {
        out.test.scenes.push_back(scene);
      } else {
        out.train.scenes.push_back(scene);
      }
    }
  }
  sort_by_id(out.train);
  sort_by_id(out.valid);
  sort_by_id(out.test);
  return out;
}

}  // namespace spkffp
