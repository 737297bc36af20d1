// tests/features_test.cpp

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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "spkffp/errors.hpp"
#include "spkffp/features.hpp"
#include "spkffp/text.hpp"
#include "test_util.hpp"

namespace spkffp {
namespace {

std::vector<AssembledSample> texts(const std::vector<std::string> &inputs) {
  std::vector<AssembledSample> out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    AssembledSample s;
    s.sample_id = "s:" + std::to_string(i);
    s.input_text = inputs[i];
    s.label = "A";
    out.push_back(s);
  }
  return out;
}

TEST(Vocabulary, FrequencyThenAlphabetical) {
  Vocabulary vocab = build_vocab(texts({"a a b", "b c"}), {1, 10});
  // a:2 b:2 c:1 -> tie a/b broken ascending.
  EXPECT_EQ(vocab.terms(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(vocab.index_of("c"), 2);
  EXPECT_EQ(vocab.index_of("zzz"), -1);
}

TEST(Vocabulary, MaxSizeTruncates) {
  EXPECT_EQ(build_vocab(texts({"a a b", "b c"}), {1, 1}).terms(), std::vector<std::string>{"a"});
}

TEST(Vocabulary, MinFreqCanEmptyIt) {
  EXPECT_THROW(build_vocab(texts({"a a b", "b c"}), {3, 10}), DataError);
  EXPECT_THROW(build_vocab({}, {1, 10}), DataError);
}

TEST(Vocabulary, CasingKeepsBracketedTokens) {
  Vocabulary vocab = build_vocab(texts({"[CLS] Hi [OTHER] hi HI [SEP]"}), {1, 10});
  EXPECT_EQ(vocab.terms(), (std::vector<std::string>{"hi", "[CLS]", "[OTHER]", "[SEP]"}));
}

TEST(Vocabulary, JsonRoundTrip) {
  Vocabulary vocab = build_vocab(texts({"x y y z"}), {1, 10});
  EXPECT_EQ(vocab_from_json(vocab_to_json(vocab)).terms(), vocab.terms());
  EXPECT_THROW(vocab_from_json("{\"version\":2,\"terms\":[]}"), DataError);
}

TEST(WordFeatures, Counts) {
  Vocabulary abc(std::vector<std::string>{"a", "b", "c"});
  FeatureVector v = word_features("a a b", abc);
  EXPECT_EQ(std::vector<double>(v.values().begin(), v.values().end()),
            (std::vector<double>{2, 1, 0}));
  EXPECT_TRUE(word_features("zzz qqq", abc).is_zero());

  Vocabulary special(std::vector<std::string>{"[OTHER]", "hi"});
  FeatureVector w = word_features("[CLS] [OTHER] hi [SEP] hi [SEP]", special);
  EXPECT_EQ(std::vector<double>(w.values().begin(), w.values().end()),
            (std::vector<double>{1, 2}));
  // Bracketed tokens are case-sensitive, plain words are not.
  FeatureVector u = word_features("[other] HI", special);
  EXPECT_EQ(std::vector<double>(u.values().begin(), u.values().end()),
            (std::vector<double>{0, 1}));
}

TEST(FeatureVector, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(FeatureVector({1.0, -0.5}), DataError);
  EXPECT_THROW(FeatureVector({std::numeric_limits<double>::quiet_NaN()}), DataError);
  EXPECT_THROW(FeatureVector({std::numeric_limits<double>::infinity()}), DataError);
}

TEST(ActivationFile, AbsoluteValueOnLoad) {
  auto dir = testing::temp_dir("act_abs");
  std::vector<ActivationRecord> records{{"s:0", {-1.5f, 2.0f}}};
  write_activations((dir / "a.ffpa").string(), 2, records);
  ActivationSet set = read_activations((dir / "a.ffpa").string());
  EXPECT_EQ(set.dim, 2u);
  ASSERT_EQ(set.vectors.size(), 1u);
  EXPECT_EQ(set.vectors.at("s:0"), FeatureVector({1.5, 2.0}));
}

TEST(ActivationFile, HeaderLayout) {
  std::vector<ActivationRecord> records{{"ab", {1.0f}}};
  std::string bytes = encode_activations(1, records);
  const std::string expected("FFPA\x01\x01\x00\x00\x00\x01\x00\x00\x00\x00\x00\x00\x00"
                             "\x02\x00"
                             "ab"
                             "\x00\x00\x80\x3f",
                             4 + 1 + 4 + 8 + 2 + 2 + 4);
  EXPECT_EQ(bytes, expected);
}

TEST(ActivationFile, EmptyFileWarns) {
  auto dir = testing::temp_dir("act_empty");
  write_activations((dir / "e.ffpa").string(), 768, {});
  testing::WarningCapture capture;
  ActivationSet set = read_activations((dir / "e.ffpa").string());
  EXPECT_TRUE(set.vectors.empty());
  EXPECT_EQ(set.dim, 768u);
  EXPECT_EQ(capture.messages.size(), 1u);
}

TEST(ActivationFile, RoundTripIsBitExact) {
  std::mt19937 rng(5);
  std::normal_distribution<float> normal(0.0f, 3.0f);
  std::vector<ActivationRecord> records;
  for (int i = 0; i < 50; ++i) {
    ActivationRecord r;
    r.sample_id = "scene:" + std::to_string(i);
    for (int d = 0; d < 17; ++d) r.values.push_back(normal(rng));
    records.push_back(r);
  }
  records[3].values[0] = -0.0f;
  records[4].values[1] = std::numeric_limits<float>::denorm_min();
  std::size_t dim = 0;
  auto decoded = decode_activations(encode_activations(17, records), &dim);
  EXPECT_EQ(dim, 17u);
  ASSERT_EQ(decoded.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(decoded[i].sample_id, records[i].sample_id);
    for (std::size_t d = 0; d < 17; ++d) {
      EXPECT_EQ(std::bit_cast<std::uint32_t>(decoded[i].values[d]),
                std::bit_cast<std::uint32_t>(records[i].values[d]));
    }
  }
}

TEST(ActivationFile, LoadErrors) {
  std::vector<ActivationRecord> records{{"a", {1.0f, 2.0f}}, {"b", {3.0f, 4.0f}}};
  std::string good = encode_activations(2, records);

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_activations(bad_magic), DataError);

  std::string bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(decode_activations(bad_version), DataError);

  // Truncated second record.
  try {
    decode_activations(good.substr(0, good.size() - 2));
    FAIL();
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("record 1"), std::string::npos) << e.what();
  }

  EXPECT_THROW(decode_activations(good + "x"), DataError);

  // Duplicate id: rename record "b" to "a" at the byte level.
  std::string dup = good;
  dup[dup.size() - 8 - 1] = 'a';
  try {
    decode_activations(dup);
    FAIL();
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos) << e.what();
  }

  // NaN payload in record 0.
  std::string nan = good;
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(std::numeric_limits<float>::quiet_NaN());
  for (int i = 0; i < 4; ++i) nan[17 + 2 + 1 + i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  EXPECT_THROW(decode_activations(nan), DataError);

  EXPECT_THROW(encode_activations(3, records), DataError);
}

TEST(ActivationFile, JsonlDebugForm) {
  auto dir = testing::temp_dir("act_jsonl");
  const std::string path = (dir / "a.jsonl").string();
  write_file(path, "{\"id\":\"x\",\"vec\":[-1,0.5]}\n{\"id\":\"y\",\"vec\":[2,-3]}\n");
  ActivationSet set = read_activations(path);
  EXPECT_EQ(set.dim, 2u);
  EXPECT_EQ(set.vectors.at("y"), FeatureVector({2.0, 3.0}));
  write_file(path, "{\"id\":\"x\",\"vec\":[1,2]}\n{\"id\":\"y\",\"vec\":[1]}\n");
  EXPECT_THROW(read_activations(path), DataError);
}

}  // namespace
}  // namespace spkffp
