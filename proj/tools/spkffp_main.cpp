// tools/spkffp_main.cpp

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

// Command-line front end: corpus ingestion, sample assembly, fingerprint
// library build/classify, evaluation artifacts and end-to-end runs.
//
// Exit codes: 0 ok, 1 usage, 2 input/data error, 3 internal invariant.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spkffp/corpus.hpp"
#include "spkffp/errors.hpp"
#include "spkffp/eval.hpp"
#include "spkffp/features.hpp"
#include "spkffp/fingerprint.hpp"
#include "spkffp/pipeline.hpp"
#include "spkffp/text.hpp"

namespace fs = std::filesystem;
using namespace spkffp;

namespace {

void emit(const std::string &path, const std::string &contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

std::vector<double> parse_ratios(const std::string &spec) {
  std::vector<double> out;
  for (const std::string &part : split(spec, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception &) {
      throw UsageError("bad ratio list '" + spec + "'");
    }
  }
  if (out.size() != 3) throw UsageError("--ratios needs three comma-separated values");
  return out;
}

std::vector<LabeledVector> to_vectors(const std::vector<AssembledSample> &samples,
                                      const std::string &mode, const Vocabulary *vocab,
                                      const ActivationSet *activations) {
  if (mode == "word") return featurize_words(samples, *vocab);
  return featurize_activations(samples, *activations);
}

struct Options {
  std::string config_path;
  RunConfig config;

  // Values below are only set when given on the command line.
  std::string in, out, out_dir, format, labels, mode, features, activations, vocab, library;
  std::string samples, train, test, ratios, tau_grid, membership, valid_seasons, test_seasons;
  std::string activation_template;
  std::optional<std::size_t> context, k, max_context, min_freq, max_size, bin_width, cap;
  std::optional<std::size_t> top_n_single;
  std::optional<double> normalizer, tau;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> top_ns;
  bool no_speaker_tokens = false;
};

void load_config(Options &o) {
  if (!o.config_path.empty()) o.config = read_run_config(o.config_path);
  RunConfig &c = o.config;
  if (!o.labels.empty()) c.labels = o.labels;
  if (o.context) c.max_previous_context = *o.context;
  if (o.no_speaker_tokens) c.include_speaker_tokens = false;
  if (!o.features.empty()) c.feature_mode = o.features;
  if (!o.activations.empty()) c.activations_path = o.activations;
  if (o.k) c.k = *o.k;
  if (!o.membership.empty()) c.membership = o.membership;
  if (o.normalizer) c.normalizer = *o.normalizer;
  if (o.min_freq) c.vocab_min_freq = *o.min_freq;
  if (o.max_size) c.vocab_max_size = *o.max_size;
  if (o.top_n_single) c.top_n = *o.top_n_single;
  if (o.tau) c.tau = *o.tau;
  if (o.seed) c.seed = *o.seed;
  if (!o.mode.empty()) c.split_mode = o.mode;
  if (!o.ratios.empty()) c.split_ratios = parse_ratios(o.ratios);
  auto seasons = [](const std::string &spec) {
    std::vector<int> out;
    for (const std::string &p : split(spec, ',')) {
      try {
        out.push_back(std::stoi(p));
      } catch (const std::exception &) {
        throw UsageError("bad season list '" + spec + "'");
      }
    }
    return out;
  };
  if (!o.valid_seasons.empty()) c.valid_seasons = seasons(o.valid_seasons);
  if (!o.test_seasons.empty()) c.test_seasons = seasons(o.test_seasons);
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  validate_run_config(c);
}

LibraryOptions library_options(const RunConfig &c) {
  LibraryOptions options;
  options.k = c.k;
  options.membership = parse_membership(c.membership);
  options.normalizer = c.normalizer;
  return options;
}

int cmd_ingest(const Options &o) {
  std::string format = o.format.empty() ? o.config.corpus_format : o.format;
  std::string in = o.in.empty() ? o.config.corpus_path : o.in;
  if (in.empty()) throw UsageError("ingest needs --in");
  std::string text;
  if (format == "friends") {
    text = adapt_friends(in);
  } else if (format == "bbt") {
    text = adapt_bbt(in);
  } else if (format == "canonical") {
    text = to_canonical_jsonl(parse_canonical(in));
  } else {
    throw UsageError("unknown format '" + format + "'");
  }
  emit(o.out, text);
  return 0;
}

int cmd_assemble(const Options &o) {
  Corpus corpus = parse_canonical(o.in);
  LabeledCorpus labeled = apply_labels(std::move(corpus), LabelMap::from_spec(o.config.labels));
  auto samples = assemble_samples(
      labeled, {o.config.max_previous_context, o.config.include_speaker_tokens});
  std::string text;
  for (const AssembledSample &s : samples) text += sample_to_json_line(s) + "\n";
  emit(o.out, text);
  return 0;
}

int cmd_split(const Options &o) {
  if (o.out_dir.empty()) throw UsageError("split needs --out-dir");
  CorpusSplits splits = split(parse_canonical(o.in), split_spec_from(o.config));
  fs::create_directories(o.out_dir);
  write_canonical(splits.train, (fs::path(o.out_dir) / "train.jsonl").string());
  write_canonical(splits.valid, (fs::path(o.out_dir) / "valid.jsonl").string());
  write_canonical(splits.test, (fs::path(o.out_dir) / "test.jsonl").string());
  std::cout << "train," << splits.train.scenes.size() << ',' << splits.train.turn_count() << '\n'
            << "valid," << splits.valid.scenes.size() << ',' << splits.valid.turn_count() << '\n'
            << "test," << splits.test.scenes.size() << ',' << splits.test.turn_count() << '\n';
  return 0;
}

int cmd_stats(const Options &o) {
  Corpus corpus = parse_canonical(o.in);
  if (!o.labels.empty() || !o.config_path.empty()) {
    corpus = apply_labels(std::move(corpus), LabelMap::from_spec(o.config.labels)).corpus;
  }
  emit(o.out, format_stats(corpus_stats(corpus)));
  return 0;
}

int cmd_build(const Options &o) {
  const RunConfig &c = o.config;
  std::string samples_path = o.samples.empty() ? o.in : o.samples;
  auto samples = read_samples(samples_path);
  std::optional<Vocabulary> vocab;
  std::optional<ActivationSet> activations;
  if (c.feature_mode == "word") {
    vocab = build_vocab(samples, {c.vocab_min_freq, c.vocab_max_size});
    if (o.vocab.empty()) throw UsageError("word mode needs --vocab to write the vocabulary");
    write_file(o.vocab, vocab_to_json(*vocab));
  } else {
    activations = read_activations(c.activations_path);
  }
  auto vectors = to_vectors(samples, c.feature_mode, vocab ? &*vocab : nullptr,
                            activations ? &*activations : nullptr);
  FingerprintLibrary library = build_library(vectors, library_options(c));
  emit(o.out, library_to_json(library));
  return 0;
}

int cmd_classify(const Options &o) {
  const RunConfig &c = o.config;
  FingerprintLibrary library = read_library(o.library);
  auto samples = read_samples(o.samples.empty() ? o.in : o.samples);
  std::optional<Vocabulary> vocab;
  std::optional<ActivationSet> activations;
  if (c.feature_mode == "word") {
    if (o.vocab.empty()) throw UsageError("word mode needs --vocab");
    vocab = vocab_from_json(read_file(o.vocab));
  } else {
    activations = read_activations(c.activations_path);
  }
  auto vectors = to_vectors(samples, c.feature_mode, vocab ? &*vocab : nullptr,
                            activations ? &*activations : nullptr);
  std::optional<GenericOptions> generic;
  if (library.classes().size() >= c.top_n) generic = GenericOptions{c.top_n, c.tau};
  auto scored = classify_all(vectors, library, generic);
  std::string text;
  for (const ScoredSample &s : scored) text += scored_to_json_line(s) + "\n";
  emit(o.out, text);
  return 0;
}

int cmd_eval(const Options &o) {
  auto scored = read_scored(o.in);
  std::vector<std::string> classes;
  if (!o.labels.empty() || !o.config_path.empty()) {
    classes = LabelMap::from_spec(o.config.labels).labels();
  }
  MetricsReport report = score(scored, classes);
  if (o.out_dir.empty()) {
    std::cout << metrics_to_json(report);
    return 0;
  }
  fs::create_directories(o.out_dir);
  write_file((fs::path(o.out_dir) / "metrics.json").string(), metrics_to_json(report));
  write_file((fs::path(o.out_dir) / "metrics.csv").string(), per_class_csv(report));
  write_file((fs::path(o.out_dir) / "confusion.csv").string(), confusion_csv(report));
  return 0;
}

int cmd_sweep_k(const Options &o) {
  const RunConfig &c = o.config;
  auto train = read_samples(o.train);
  auto test = read_samples(o.test);
  std::optional<Vocabulary> vocab;
  std::optional<ActivationSet> activations;
  if (c.feature_mode == "word") {
    vocab = build_vocab(train, {c.vocab_min_freq, c.vocab_max_size});
  } else {
    activations = read_activations(c.activations_path);
  }
  auto train_v = to_vectors(train, c.feature_mode, vocab ? &*vocab : nullptr,
                            activations ? &*activations : nullptr);
  auto test_v = to_vectors(test, c.feature_mode, vocab ? &*vocab : nullptr,
                           activations ? &*activations : nullptr);
  std::vector<std::size_t> ks = o.ks;
  if (ks.empty()) {
    const std::size_t dim = train_v.front().features.dim();
    for (std::size_t k = 16; k < dim; k *= 2) ks.push_back(k);
    ks.push_back(dim);
  }
  auto points = sweep_k(train_v, test_v, ks, parse_membership(c.membership), c.normalizer);
  emit(o.out, sweep_k_csv(points));
  return 0;
}

int cmd_sweep_context(const Options &o) {
  const RunConfig &c = o.config;
  LabelMap labels = LabelMap::from_spec(c.labels);
  LabeledCorpus train = apply_labels(parse_canonical(o.train), labels);
  LabeledCorpus test = apply_labels(parse_canonical(o.test), labels);
  FeaturePipelineConfig pipeline;
  pipeline.mode = c.feature_mode == "word" ? FeaturePipelineConfig::Mode::kWord
                                           : FeaturePipelineConfig::Mode::kActivations;
  pipeline.vocab = {c.vocab_min_freq, c.vocab_max_size};
  pipeline.activation_template = o.activation_template;
  pipeline.include_speaker_tokens = c.include_speaker_tokens;
  pipeline.library = library_options(c);
  std::vector<std::size_t> contexts;
  const std::size_t max = o.max_context.value_or(6);
  for (std::size_t n = 0; n <= max; ++n) contexts.push_back(n);
  emit(o.out, sweep_context_csv(sweep_context(train, test, contexts, pipeline)));
  return 0;
}

int cmd_hist(const Options &o) {
  auto scored = read_scored(o.in);
  std::map<std::string, std::size_t> lengths;
  for (const AssembledSample &s : read_samples(o.samples)) {
    lengths[s.sample_id] = s.target_length_words;
  }
  emit(o.out, histogram_csv(length_histogram(scored, lengths, o.bin_width.value_or(1),
                                             o.cap.value_or(25))));
  return 0;
}

int cmd_generic(const Options &o) {
  auto scored = read_scored(o.in);
  std::vector<double> taus = parse_tau_grid(o.tau_grid.empty() ? "0:0.05:0.001" : o.tau_grid);
  std::vector<std::size_t> top_ns = o.top_ns.empty() ? std::vector<std::size_t>{2, 3, 4}
                                                     : o.top_ns;
  std::vector<GenericCurvePoint> all;
  for (std::size_t n : top_ns) {
    auto points = generic_curve(scored, n, taus);
    all.insert(all.end(), points.begin(), points.end());
  }
  emit(o.out, generic_curve_csv(all));
  return 0;
}

int cmd_run(const Options &o) {
  if (o.config_path.empty()) throw UsageError("run needs --config");
  RunConfig c = o.config;
  if (!o.in.empty()) c.corpus_path = o.in;
  if (!o.format.empty()) c.corpus_format = o.format;
  RunArtifacts artifacts = run(c);
  std::cout << "accuracy," << format_fixed(artifacts.metrics.accuracy, 2) << '\n'
            << "macro_f1," << format_fixed(artifacts.metrics.macro_f1, 2) << '\n'
            << "weighted_f1," << format_fixed(artifacts.metrics.weighted_f1, 2) << '\n'
            << "n_samples," << artifacts.metrics.n_samples << '\n'
            << "n_featureless," << artifacts.metrics.n_featureless << '\n'
            << "output_dir," << artifacts.directory << '\n';
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speaker identification with fuzzy fingerprints"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App *sub) {
    sub->add_option("--config", o.config_path, "Run configuration file");
  };
  auto feature_flags = [&o](CLI::App *sub) {
    sub->add_option("--features", o.features, "word | activations");
    sub->add_option("--activations", o.activations, "Activation file (FFPA or .jsonl)");
    sub->add_option("--k", o.k, "Fingerprint size");
    sub->add_option("--membership", o.membership, "pareto80_20 | linear");
    sub->add_option("--N", o.normalizer, "Similarity normalizer (default k)");
    sub->add_option("--min-freq", o.min_freq, "Vocabulary minimum frequency");
    sub->add_option("--max-size", o.max_size, "Vocabulary maximum size");
  };

  auto *ingest = app.add_subcommand("ingest", "Convert a transcript release to canonical JSONL");
  common(ingest);
  ingest->add_option("--format", o.format, "friends | bbt | canonical");
  ingest->add_option("--in", o.in, "Input file or directory");
  ingest->add_option("--out", o.out, "Output JSONL (stdout if omitted)");

  auto *assemble = app.add_subcommand("assemble", "Build context-windowed samples");
  common(assemble);
  assemble->add_option("--context", o.context, "max_previous_context");
  assemble->add_flag("--no-speaker-tokens", o.no_speaker_tokens, "Omit context speaker tokens");
  assemble->add_option("--labels", o.labels, "friends | bbt | comma-separated main speakers");
  assemble->add_option("--in", o.in, "Canonical corpus JSONL")->required();
  assemble->add_option("--out", o.out, "Sample JSONL (stdout if omitted)");

  auto *split_cmd = app.add_subcommand("split", "Partition scenes into train/valid/test");
  common(split_cmd);
  split_cmd->add_option("--mode", o.mode, "by-season | random");
  split_cmd->add_option("--valid-seasons", o.valid_seasons, "Comma-separated seasons");
  split_cmd->add_option("--test-seasons", o.test_seasons, "Comma-separated seasons");
  split_cmd->add_option("--ratios", o.ratios, "train,valid,test");
  split_cmd->add_option("--seed", o.seed, "Random split seed");
  split_cmd->add_option("--in", o.in, "Canonical corpus JSONL")->required();
  split_cmd->add_option("--out-dir", o.out_dir, "Directory for train/valid/test.jsonl");

  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  common(stats);
  stats->add_option("--in", o.in, "Canonical corpus JSONL")->required();
  stats->add_option("--labels", o.labels, "Apply a label map before counting speakers");
  stats->add_option("--out", o.out, "Output file (stdout if omitted)");

  auto *build = app.add_subcommand("build", "Build a fingerprint library from training samples");
  common(build);
  feature_flags(build);
  build->add_option("--samples", o.samples, "Training sample JSONL")->required();
  build->add_option("--vocab", o.vocab, "Vocabulary output (word mode)");
  build->add_option("--out", o.out, "Library JSON (stdout if omitted)");

  auto *classify_cmd = app.add_subcommand("classify", "Classify samples against a library");
  common(classify_cmd);
  feature_flags(classify_cmd);
  classify_cmd->add_option("--library", o.library, "Library JSON")->required();
  classify_cmd->add_option("--samples", o.samples, "Sample JSONL")->required();
  classify_cmd->add_option("--vocab", o.vocab, "Vocabulary JSON (word mode)");
  classify_cmd->add_option("--top-n", o.top_n_single, "Generic detection top-n");
  classify_cmd->add_option("--tau", o.tau, "Generic detection threshold");
  classify_cmd->add_option("--out", o.out, "Classification JSONL (stdout if omitted)");

  auto *eval = app.add_subcommand("eval", "Accuracy, F1 and confusion matrix");
  common(eval);
  eval->add_option("--in", o.in, "Classification JSONL")->required();
  eval->add_option("--labels", o.labels, "Class order for the confusion matrix");
  eval->add_option("--out-dir", o.out_dir, "Directory for metrics files");

  auto *sweep_k_cmd = app.add_subcommand("sweep-k", "Accuracy as a function of fingerprint size");
  common(sweep_k_cmd);
  feature_flags(sweep_k_cmd);
  sweep_k_cmd->add_option("--train", o.train, "Training sample JSONL")->required();
  sweep_k_cmd->add_option("--test", o.test, "Test sample JSONL")->required();
  sweep_k_cmd->add_option("--ks", o.ks, "Comma-separated k values")->delimiter(',');
  sweep_k_cmd->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto *sweep_ctx = app.add_subcommand("sweep-context", "Metrics as a function of context size");
  common(sweep_ctx);
  feature_flags(sweep_ctx);
  sweep_ctx->add_option("--train", o.train, "Training corpus JSONL")->required();
  sweep_ctx->add_option("--test", o.test, "Test corpus JSONL")->required();
  sweep_ctx->add_option("--labels", o.labels, "Label map");
  sweep_ctx->add_option("--max", o.max_context, "Largest context size (default 6)");
  sweep_ctx->add_flag("--no-speaker-tokens", o.no_speaker_tokens, "Omit context speaker tokens");
  sweep_ctx->add_option("--activations-template", o.activation_template,
                        "Activation path with {} for the context size");
  sweep_ctx->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto *hist = app.add_subcommand("hist", "Utterance-length histogram of correct/incorrect");
  common(hist);
  hist->add_option("--in", o.in, "Classification JSONL")->required();
  hist->add_option("--samples", o.samples, "Sample JSONL with target lengths")->required();
  hist->add_option("--bin-width", o.bin_width, "Bin width in words (default 1)");
  hist->add_option("--cap", o.cap, "Largest displayed length (default 25)");
  hist->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto *generic = app.add_subcommand("generic", "Accuracy as generic utterances are removed");
  common(generic);
  generic->add_option("--in", o.in, "Classification JSONL")->required();
  generic->add_option("--top-n", o.top_ns, "Comma-separated top-n values")->delimiter(',');
  generic->add_option("--tau-grid", o.tau_grid, "start:stop:step");
  generic->add_option("--out", o.out, "CSV output (stdout if omitted)");

  auto *run_cmd = app.add_subcommand("run", "End-to-end run from a config file");
  common(run_cmd);
  run_cmd->add_option("--in", o.in, "Override corpus_path");
  run_cmd->add_option("--format", o.format, "Override corpus_format");
  run_cmd->add_option("--out-dir", o.out_dir, "Override output_dir");
  run_cmd->add_option("--context", o.context, "Override max_previous_context");
  run_cmd->add_option("--k", o.k, "Override k");
  run_cmd->add_option("--seed", o.seed, "Override seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    load_config(o);
    if (*ingest) return cmd_ingest(o);
    if (*assemble) return cmd_assemble(o);
    if (*split_cmd) return cmd_split(o);
    if (*stats) return cmd_stats(o);
    if (*build) return cmd_build(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*eval) return cmd_eval(o);
    if (*sweep_k_cmd) return cmd_sweep_k(o);
    if (*sweep_ctx) return cmd_sweep_context(o);
    if (*hist) return cmd_hist(o);
    if (*generic) return cmd_generic(o);
    if (*run_cmd) return cmd_run(o);
  } catch (const StageError &e) {
    std::cerr << "error [stage " << e.stage() << "]: " << e.what() << '\n';
    return e.exit_code();
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
