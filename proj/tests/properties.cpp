// tests/properties.cpp

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

#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "spkffp/corpus.hpp"
#include "spkffp/eval.hpp"
#include "spkffp/features.hpp"
#include "spkffp/fingerprint.hpp"
#include "spkffp/pipeline.hpp"
#include "spkffp/text.hpp"

namespace spkffp {
namespace properties {
namespace {

using Rng = std::mt19937_64;

class Recorder {
 public:
  Recorder(const char *name, int cases) { out_.name = name; out_.cases = cases; }

  void expect(bool condition, int trial, const std::string &what) {
    if (condition) return;
    if (out_.failures == 0) out_.first_failure = "case " + std::to_string(trial) + ": " + what;
    ++out_.failures;
  }

  Outcome done() { return out_; }

 private:
  Outcome out_;
};

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Continuous values: ties have probability zero.
std::vector<double> continuous(Rng &rng, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(m);
  for (double &x : v) x = u(rng);
  return v;
}

// Small integers: plenty of ties and zeros.
std::vector<double> coarse(Rng &rng, std::size_t m, int max_value) {
  std::uniform_int_distribution<int> u(0, max_value);
  std::vector<double> v(m);
  for (double &x : v) x = u(rng);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  return v;
}

std::size_t oracle_rank(const std::vector<double> &v, std::size_t i) {
  std::size_t rank = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] > v[i] || (v[j] == v[i] && j < i)) ++rank;
  }
  return rank;
}

// Written from the 80/20 definition with the knee found by search.
double oracle_pareto(std::size_t i, std::size_t k) {
  std::size_t b = 0;
  while (5 * b < k) ++b;
  const double di = static_cast<double>(i);
  if (i < b) return 1.0 - 0.8 * di / static_cast<double>(b);
  return 0.2 * (1.0 - (di - static_cast<double>(b)) / static_cast<double>(k - b));
}

struct Problem {
  std::size_t dim = 0;
  std::vector<LabeledVector> train;
  FeatureVector query;
};

Problem random_problem(Rng &rng, bool with_ties) {
  Problem p;
  p.dim = uniform(rng, 4, 40);
  const std::size_t n_classes = uniform(rng, 1, 5);
  const std::size_t n_train = n_classes + uniform(rng, 0, 20);
  auto draw = [&] { return with_ties ? coarse(rng, p.dim, 6) : continuous(rng, p.dim); };
  for (std::size_t i = 0; i < n_train; ++i) {
    const std::size_t cls = i < n_classes ? i : uniform(rng, 0, n_classes - 1);
    p.train.push_back({"t:" + std::to_string(1000 + i), "C" + std::to_string(cls),
                       FeatureVector(draw())});
  }
  p.query = FeatureVector(draw());
  return p;
}

MembershipKind random_kind(Rng &rng) {
  return uniform(rng, 0, 1) ? MembershipKind::kPareto8020 : MembershipKind::kLinear;
}

std::vector<std::string> class_order(const ClassificationResult &r) {
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto &[label, s] : r.scores) ranked.push_back({-s, label});
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> out;
  for (const auto &e : ranked) out.push_back(e.second);
  return out;
}

std::vector<double> values_of(const FeatureVector &v) {
  return std::vector<double>(v.values().begin(), v.values().end());
}

// ---------------------------------------------------------------------------

Outcome membership_monotone(std::uint64_t seed, int cases) {
  Recorder rec("membership monotonicity and range", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const std::size_t k = uniform(rng, 1, 700);
    const MembershipKind kind = random_kind(rng);
    double prev = 2.0;
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double mu = membership(kind, i, k);
      if (!(mu > 0.0 && mu <= 1.0 && mu <= prev)) ok = false;
      if (kind == MembershipKind::kPareto8020 && std::abs(mu - oracle_pareto(i, k)) > 1e-15) {
        ok = false;
      }
      prev = mu;
    }
    rec.expect(ok && membership(kind, 0, k) == 1.0, t, "k=" + std::to_string(k));

    // Built fingerprints carry the same shape.
    std::vector<double> v = coarse(rng, uniform(rng, 1, 60), 4);
    FuzzyFingerprint fp = sample_fingerprint(FeatureVector(v), uniform(rng, 1, 70), kind);
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < fp.entries.size(); ++i) {
      const auto &e = fp.entries[i];
      seen.insert(e.feature);
      if (i > 0) {
        const auto &p = fp.entries[i - 1];
        ok = ok && p.membership >= e.membership;
        ok = ok && (v[p.feature] > v[e.feature] ||
                    (v[p.feature] == v[e.feature] && p.feature < e.feature));
      }
    }
    rec.expect(ok && seen.size() == fp.entries.size(), t, "fingerprint ordering");
  }
  return rec.done();
}

Outcome score_bounds_symmetry(std::uint64_t seed, int cases) {
  Recorder rec("similarity bounds and symmetry", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const std::size_t m = uniform(rng, 1, 64);
    const std::size_t k = uniform(rng, 1, m + 4);
    const MembershipKind kind = random_kind(rng);
    const bool ties = uniform(rng, 0, 1);
    auto a = sample_fingerprint(FeatureVector(ties ? coarse(rng, m, 3) : continuous(rng, m)), k,
                                kind);
    auto b = sample_fingerprint(FeatureVector(ties ? coarse(rng, m, 3) : continuous(rng, m)), k,
                                kind);
    const double n = static_cast<double>(k);
    const double ab = similarity(a, b, n);
    const double ba = similarity(b, a, n);
    rec.expect(ab >= 0.0 && ab <= 1.0, t, "score " + std::to_string(ab) + " out of [0,1]");
    rec.expect(ab == ba, t, "asymmetric");
  }
  return rec.done();
}

Outcome scale_invariance(std::uint64_t seed, int cases) {
  Recorder rec("positive-scale invariance", cases);
  Rng rng(seed);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  for (int t = 0; t < cases; ++t) {
    // Small-integer values keep ties exact under scaling.
    Problem p = random_problem(rng, true);
    LibraryOptions opt{uniform(rng, 1, p.dim), random_kind(rng), {}};
    FingerprintLibrary lib = build_library(p.train, opt);
    const double c = std::pow(10.0, log_scale(rng));
    std::vector<double> scaled = values_of(p.query);
    for (double &x : scaled) x *= c;
    ClassificationResult r1 = classify(p.query, lib, "q");
    ClassificationResult r2 = classify(FeatureVector(scaled), lib, "q");
    rec.expect(r1.scores == r2.scores && r1.predicted == r2.predicted, t,
               "c=" + std::to_string(c));
  }
  return rec.done();
}

Outcome permutation_equivariance(std::uint64_t seed, int cases) {
  Recorder rec("permutation equivariance", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    Problem p = random_problem(rng, false);
    std::vector<std::size_t> perm(p.dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto permute = [&](const FeatureVector &v) {
      std::vector<double> out(p.dim);
      for (std::size_t i = 0; i < p.dim; ++i) out[perm[i]] = v[i];
      return FeatureVector(out);
    };
    std::vector<LabeledVector> train2 = p.train;
    for (auto &lv : train2) lv.features = permute(lv.features);
    LibraryOptions opt{uniform(rng, 1, p.dim), random_kind(rng), {}};
    ClassificationResult r1 = classify(p.query, build_library(p.train, opt), "q");
    ClassificationResult r2 = classify(permute(p.query), build_library(train2, opt), "q");
    bool same = r1.scores.size() == r2.scores.size();
    for (const auto &[label, s] : r1.scores) {
      same = same && std::abs(s - r2.scores.at(label)) <= 1e-12;
    }
    if (r1.margin_top2 > 1e-9) same = same && r1.predicted == r2.predicted;
    rec.expect(same, t, "scores moved under permutation");
  }
  return rec.done();
}

Outcome tie_break(std::uint64_t seed, int cases) {
  Recorder rec("ranking tie-break determinism", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    std::vector<double> v = coarse(rng, uniform(rng, 1, 80), 3);
    std::vector<std::uint32_t> order = rank_units(v);
    bool ok = order == rank_units(v) && order.size() == v.size();
    for (std::size_t r = 0; ok && r < order.size(); ++r) ok = oracle_rank(v, order[r]) == r;
    rec.expect(ok, t, "rank order differs from counting oracle");

    // Identical class fingerprints tie; the first name wins.
    const std::size_t n = uniform(rng, 2, 6);
    std::vector<LabeledVector> train;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < n; ++c) {
      std::string name(1, static_cast<char>('A' + uniform(rng, 0, 25)));
      name += std::to_string(c);
      names.push_back(name);
      train.push_back({"t:" + std::to_string(c), name, FeatureVector(v)});
    }
    FingerprintLibrary lib = build_library(train, {uniform(rng, 1, v.size()),
                                                   random_kind(rng), {}});
    ClassificationResult r = classify(FeatureVector(coarse(rng, v.size(), 3)), lib, "q");
    rec.expect(r.predicted == *std::min_element(names.begin(), names.end()), t,
               "tie went to '" + r.predicted + "'");
  }
  return rec.done();
}

Outcome saturation(std::uint64_t seed, int cases) {
  Recorder rec("saturation at k = M", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    Problem p = random_problem(rng, uniform(rng, 0, 1));
    const MembershipKind kind = random_kind(rng);
    const std::size_t k2 = uniform(rng, p.dim, 3 * p.dim);
    ClassificationResult r1 = classify(p.query, build_library(p.train, {p.dim, kind, {}}), "q");
    ClassificationResult r2 = classify(p.query, build_library(p.train, {k2, kind, {}}), "q");
    rec.expect(class_order(r1) == class_order(r2) && r1.predicted == r2.predicted, t,
               "M=" + std::to_string(p.dim) + " k'=" + std::to_string(k2));
  }
  return rec.done();
}

Outcome self_consistency(std::uint64_t seed, int cases) {
  Recorder rec("self-similarity is the maximum", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const std::size_t m = uniform(rng, 1, 64);
    const std::size_t k = uniform(rng, 1, m);
    const MembershipKind kind = random_kind(rng);
    auto a = sample_fingerprint(FeatureVector(continuous(rng, m)), k, kind);
    double expected = 0.0;
    for (std::size_t i = 0; i < k; ++i) expected += membership(kind, i, k);
    expected /= static_cast<double>(k);
    const double self = similarity(a, a, static_cast<double>(k));
    bool ok = std::abs(self - expected) <= 1e-12;
    for (int j = 0; j < 3; ++j) {
      auto b = sample_fingerprint(FeatureVector(coarse(rng, m, 5)), k, kind);
      ok = ok && similarity(a, b, static_cast<double>(k)) <= self + 1e-15;
    }
    rec.expect(ok, t, "self=" + std::to_string(self) + " expected=" + std::to_string(expected));
  }
  return rec.done();
}

Outcome oracle_equivalence(std::uint64_t seed, int cases) {
  Recorder rec("similarity matches naive oracle", cases);
  const double err = oracle_max_error(seed, cases);
  rec.expect(err <= 1e-12, 0, "max error " + std::to_string(err));
  return rec.done();
}

// ---------------------------------------------------------------------------

LabeledCorpus random_corpus(Rng &rng) {
  static const char *kSpeakers[] = {"Ann Lee", "Bob", "Cy-3", "Dee", "Eve O'Neil"};
  static const char *kWords[] = {"hi", "yes", "no", "well", "okay", "so", "what", "really"};
  Corpus c;
  const std::size_t n_scenes = uniform(rng, 1, 6);
  for (std::size_t s = 0; s < n_scenes; ++s) {
    Scene scene;
    scene.scene_id = "sc" + std::to_string(s);
    scene.season = static_cast<int>(uniform(rng, 1, 4));
    scene.episode = "e";
    const std::size_t n_turns = uniform(rng, 1, 12);
    for (std::size_t i = 0; i < n_turns; ++i) {
      Turn turn;
      turn.speaker = kSpeakers[uniform(rng, 0, 4)];
      const std::size_t words = uniform(rng, 1, 5);
      for (std::size_t w = 0; w < words; ++w) {
        if (w) turn.text += ' ';
        turn.text += kWords[uniform(rng, 0, 7)];
      }
      turn.index = i;
      scene.turns.push_back(turn);
    }
    c.scenes.push_back(scene);
  }
  return apply_labels(std::move(c), LabelMap({"Ann Lee", "Bob", "Cy-3"}));
}

std::size_t count_of(const std::string &s, const std::string &needle) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

Outcome context_window(std::uint64_t seed, int cases) {
  Recorder rec("context window and fairness", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    LabeledCorpus corpus = random_corpus(rng);
    AssemblyOptions opt{uniform(rng, 0, 7), uniform(rng, 0, 1) == 1};
    std::vector<AssembledSample> samples = assemble_samples(corpus, opt);
    std::map<std::string, const Turn *> turns;
    for (const Scene &scene : corpus.corpus.scenes) {
      for (const Turn &turn : scene.turns) {
        turns[scene.scene_id + ":" + std::to_string(turn.index)] = &turn;
      }
    }
    bool ok = samples.size() == corpus.corpus.turn_count();
    for (const AssembledSample &s : samples) {
      const Turn &turn = *turns.at(s.sample_id);
      const std::string &in = s.input_text;
      ok = ok && s.context_used == std::min(turn.index, opt.max_previous_context);
      ok = ok && count_of(in, "[SEP]") == s.context_used + 1;
      ok = ok && in.rfind("[CLS] ", 0) == 0 && in.size() >= 5 &&
           in.compare(in.size() - 5, 5, "[SEP]") == 0;
      // Locate the target segment.
      std::size_t pos = 5;  // after "[CLS]"
      for (std::size_t n = 0; n < s.context_used; ++n) pos = in.find("[SEP]", pos) + 5;
      const std::string target = in.substr(pos + 1);
      const std::string own = make_speaker_token(turn.label);
      ok = ok && target.rfind(own, 0) != 0;
      ok = ok && target == turn.text + " [SEP]";
      ok = ok && s.label == turn.label;
    }
    rec.expect(ok, t, "assembled sample violates the window");
  }
  return rec.done();
}

Outcome split_partition(std::uint64_t seed, int cases) {
  Recorder rec("splits partition the scene set", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    Corpus c = random_corpus(rng).corpus;
    SplitSpec spec;
    if (uniform(rng, 0, 1)) {
      spec.mode = SplitSpec::Mode::kRandom;
      spec.seed = rng();
    } else {
      spec.valid_seasons = {2};
      spec.test_seasons = {3, 4};
    }
    CorpusSplits sp = split(c, spec);
    std::multiset<std::string> ids;
    for (const Corpus *part : {&sp.train, &sp.valid, &sp.test}) {
      for (const Scene &s : part->scenes) ids.insert(s.scene_id);
    }
    std::set<std::string> unique(ids.begin(), ids.end());
    bool ok = ids.size() == c.scenes.size() && unique.size() == ids.size();
    if (spec.mode == SplitSpec::Mode::kRandom) {
      CorpusSplits again = split(c, spec);
      ok = ok && to_canonical_jsonl(again.test) == to_canonical_jsonl(sp.test);
    }
    rec.expect(ok, t, "scene lost or duplicated");
  }
  return rec.done();
}

Outcome word_counts(std::uint64_t seed, int cases) {
  Recorder rec("word feature counts", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    LabeledCorpus corpus = random_corpus(rng);
    std::vector<AssembledSample> samples = assemble_samples(corpus, {uniform(rng, 0, 3), true});
    Vocabulary vocab = build_vocab(samples, {1, uniform(rng, 1, 12)});
    bool ok = build_vocab(samples, {1, vocab.size()}).terms() == vocab.terms();
    for (const AssembledSample &s : samples) {
      FeatureVector v = word_features(s, vocab);
      double total = 0.0;
      for (double x : v.values()) total += x;
      std::size_t in_vocab = 0;
      for (std::string_view tok : split_whitespace(s.input_text)) {
        if (vocab.index_of(normalize_term(tok)) >= 0) ++in_vocab;
      }
      ok = ok && total == static_cast<double>(in_vocab);
    }
    rec.expect(ok, t, "feature sum differs from in-vocabulary token count");
  }
  return rec.done();
}

// ---------------------------------------------------------------------------

std::vector<ScoredSample> random_results(Rng &rng, std::size_t n_classes) {
  std::vector<ScoredSample> out;
  const std::size_t n = uniform(rng, 1, 60);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    ScoredSample s;
    s.sample_id = "s" + std::to_string(i);
    s.gold = "c" + std::to_string(uniform(rng, 0, n_classes - 1));
    s.featureless = i > 0 && uniform(rng, 0, 9) == 0;
    double best = -1.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      // Quantized scores produce exact ties at small tau.
      const double v = std::round(u(rng) * 40.0) / 40.0;
      const std::string label = "c" + std::to_string(c);
      s.result.scores[label] = v;
      if (v > best) {
        best = v;
        s.result.predicted = label;
      }
    }
    out.push_back(s);
  }
  return out;
}

Outcome confusion_consistency(std::uint64_t seed, int cases) {
  Recorder rec("confusion matrix consistency and F1 bounds", cases);
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const std::size_t n_classes = uniform(rng, 1, 6);
    std::vector<ScoredSample> results = random_results(rng, n_classes);
    if (std::all_of(results.begin(), results.end(), [](const auto &s) { return s.featureless; })) {
      results[0].featureless = false;
    }
    std::vector<std::string> classes;
    // A prefix of the labels; the rest must be appended by score().
    const std::size_t listed = uniform(rng, 0, n_classes);
    for (std::size_t c = 0; c < listed; ++c) classes.push_back("c" + std::to_string(c));
    MetricsReport r = score(results, classes);
    std::size_t n = 0;
    std::size_t correct = 0;
    std::map<std::string, std::size_t> gold_counts;
    for (const ScoredSample &s : results) {
      if (s.featureless) continue;
      ++n;
      ++gold_counts[s.gold];
      if (s.gold == s.result.predicted) ++correct;
    }
    std::size_t trace = 0;
    std::size_t total = 0;
    bool ok = r.n_samples == n;
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
      trace += r.confusion[i][i];
      std::size_t row = 0;
      for (std::size_t v : r.confusion[i]) row += v;
      total += row;
      auto it = gold_counts.find(r.classes[i]);
      ok = ok && row == (it == gold_counts.end() ? 0 : it->second);
      ok = ok && row == r.support.at(r.classes[i]);
    }
    const double from_matrix = 100.0 * static_cast<double>(trace) / static_cast<double>(total);
    const double from_stream = 100.0 * static_cast<double>(correct) / static_cast<double>(n);
    ok = ok && std::abs(from_matrix - r.accuracy) <= 1e-12 &&
         std::abs(from_stream - r.accuracy) <= 1e-12;
    double lo = 101.0;
    double hi = -1.0;
    for (const auto &[label, f1] : r.per_class_f1) {
      ok = ok && f1 >= 0.0 && f1 <= 100.0;
      if (r.support.at(label) > 0) lo = std::min(lo, f1);
      hi = std::max(hi, f1);
    }
    ok = ok && r.weighted_f1 >= lo - 1e-9 && r.weighted_f1 <= hi + 1e-9;
    ok = ok && r.macro_f1 >= 0.0 && r.macro_f1 <= 100.0;
    rec.expect(ok, t, "metrics disagree with the result stream");
  }
  return rec.done();
}

Outcome generic_monotone(std::uint64_t seed, int cases) {
  Recorder rec("generic removal monotonicity", cases);
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  for (int t = 0; t < cases; ++t) {
    std::vector<ScoredSample> results = random_results(rng, uniform(rng, 4, 7));
    std::vector<double> taus;
    for (int i = 0; i < 8; ++i) taus.push_back(u(rng));
    taus.push_back(0.0);
    taus.push_back(0.025);  // a quantization step, so ties land exactly on tau
    bool ok = true;
    std::map<std::size_t, std::vector<GenericCurvePoint>> curves;
    for (std::size_t n : {2u, 3u, 4u}) {
      curves[n] = generic_curve(results, n, taus);
      for (std::size_t i = 1; i < curves[n].size(); ++i) {
        ok = ok && curves[n][i - 1].tau <= curves[n][i].tau;
        ok = ok && curves[n][i - 1].removed <= curves[n][i].removed;
      }
    }
    for (std::size_t i = 0; i < taus.size(); ++i) {
      ok = ok && curves[2][i].removed >= curves[3][i].removed &&
           curves[3][i].removed >= curves[4][i].removed;
    }
    rec.expect(ok, t, "removal count not monotone");
  }
  return rec.done();
}

Outcome config_roundtrip(std::uint64_t seed, int cases) {
  Recorder rec("config round trip", cases);
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < cases; ++t) {
    RunConfig c;
    c.corpus_path = "data/c" + std::to_string(rng() % 1000) + ".jsonl";
    c.corpus_format = std::vector<std::string>{"friends", "bbt", "canonical"}[uniform(rng, 0, 2)];
    c.split_mode = uniform(rng, 0, 1) ? "random" : "by-season";
    for (std::size_t i = uniform(rng, 0, 3); i > 0; --i) {
      c.test_seasons.push_back(static_cast<int>(uniform(rng, 1, 10)));
    }
    c.split_ratios = {u(rng), u(rng), u(rng)};
    c.seed = rng();
    c.max_previous_context = uniform(rng, 0, 9);
    c.include_speaker_tokens = uniform(rng, 0, 1);
    c.k = uniform(rng, 1, 1000);
    c.membership = uniform(rng, 0, 1) ? "linear" : "pareto80_20";
    if (uniform(rng, 0, 1)) c.normalizer = 0.5 + u(rng) * 100.0;
    c.top_n = uniform(rng, 2, 4);
    c.tau = u(rng) / 10.0;
    const std::string text = serialize_run_config(c);
    RunConfig back = parse_run_config(text);
    rec.expect(back == c && serialize_run_config(back) == text, t, "config changed");
  }
  return rec.done();
}

}  // namespace

double naive_similarity(const std::vector<double> &a, const std::vector<double> &b,
                        std::size_t k, double normalizer) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t ra = oracle_rank(a, i);
    const std::size_t rb = oracle_rank(b, i);
    const double ma = ra < k ? oracle_pareto(ra, k) : 0.0;
    const double mb = rb < k ? oracle_pareto(rb, k) : 0.0;
    total += std::min(ma, mb);
  }
  return total / normalizer;
}

double oracle_max_error(std::uint64_t seed, int cases) {
  Rng rng(seed);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  double worst = 0.0;
  for (int t = 0; t < cases; ++t) {
    const std::size_t m = uniform(rng, 1, 64);
    const std::size_t k = uniform(rng, 1, std::min<std::size_t>(16, m));
    const bool ties = uniform(rng, 0, 3) == 0;
    std::vector<double> a = ties ? coarse(rng, m, 3) : continuous(rng, m);
    std::vector<double> b = ties ? coarse(rng, m, 3) : continuous(rng, m);
    const double n = uniform(rng, 0, 1) ? static_cast<double>(k) : scale(rng) * k;
    auto fa = sample_fingerprint(FeatureVector(a), k, MembershipKind::kPareto8020);
    auto fb = sample_fingerprint(FeatureVector(b), k, MembershipKind::kPareto8020);
    worst = std::max(worst, std::abs(similarity(fa, fb, n) - naive_similarity(a, b, k, n)));
  }
  return worst;
}

const std::vector<Property> &all() {
  static const std::vector<Property> kAll{
      {"MembershipMonotone", membership_monotone},
      {"ScoreBoundsSymmetry", score_bounds_symmetry},
      {"ScaleInvariance", scale_invariance},
      {"PermutationEquivariance", permutation_equivariance},
      {"TieBreak", tie_break},
      {"Saturation", saturation},
      {"SelfConsistency", self_consistency},
      {"OracleEquivalence", oracle_equivalence},
      {"ContextWindow", context_window},
      {"SplitPartition", split_partition},
      {"WordCounts", word_counts},
      {"ConfusionConsistency", confusion_consistency},
      {"GenericMonotone", generic_monotone},
      {"ConfigRoundTrip", config_roundtrip},
  };
  return kAll;
}

}  // namespace properties
}  // namespace spkffp
