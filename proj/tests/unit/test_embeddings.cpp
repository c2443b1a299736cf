// Copyright 2026 The BDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bda/embeddings.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bda/error.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace bda::embeddings {
namespace {

WordVectorStore parse(const std::string& text) {
  std::istringstream in(text);
  return parse_word_vectors(in);
}

TEST(Cosine, HandValues) {
  const Vector x{0.3, -2.0, 5.0};
  EXPECT_NEAR(cosine(x, x), 1.0, 1e-15);
  EXPECT_EQ(cosine(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_NEAR(cosine(Vector{1, 1}, Vector{1, 0}), 0.7071067811865475, 1e-15);
  EXPECT_EQ(cosine(Vector{0, 0}, Vector{1, 0}), 0.0);
}

TEST(Cosine, DimensionMismatch) {
  EXPECT_THROW(cosine(Vector{1, 0}, Vector{1, 0, 0}), DomainError);
}

TEST(CosineProperty, MatchesOracleAndStaysInRange) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Vector u(1 + rng.below(20)), v(u.size());
    for (double& x : u) x = testing::gaussian(rng);
    for (double& x : v) x = testing::gaussian(rng);
    const double c = cosine(u, v);
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    EXPECT_NEAR(c, testing::brute_force_cosine(u, v), 1e-12);
  }
}

TEST(LoadWordVectors, ValidFile) {
  const auto store = parse("2 3\nfoo 1 2 3\nbar 0.5 -1 2e-1\n");
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.dim(), 3u);
  ASSERT_TRUE(store.find("bar").has_value());
  EXPECT_DOUBLE_EQ((*store.find("bar"))[2], 0.2);
}

TEST(LoadWordVectors, ShortLineReportsLineNumber) {
  try {
    parse("2 3\nfoo 1 2 3\nbar 1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
}

TEST(LoadWordVectors, NonFiniteValue) {
  EXPECT_THROW(parse("1 2\nfoo 1 nan\n"), FormatError);
  EXPECT_THROW(parse("1 2\nfoo inf 1\n"), FormatError);
}

TEST(LoadWordVectors, CountMismatch) {
  EXPECT_THROW(parse("3 2\nfoo 1 2\nbar 3 4\n"), FormatError);
  EXPECT_THROW(parse("garbage\n"), FormatError);
}

TEST(LoadWordVectors, DuplicateLastWins) {
  const auto store = parse("2 2\nfoo 1 0\nfoo 0 1\n");
  EXPECT_EQ(store.size(), 1u);
  EXPECT_EQ(store.duplicates(), 1u);
  EXPECT_EQ((*store.find("foo"))[1], 1.0);
}

TEST(LoadWordVectors, MissingFileIsIoError) {
  EXPECT_THROW(load_word_vectors("/nonexistent/vectors.txt"), IoError);
}

TEST(NearestNeighbors, HandExample) {
  const WordVectorStore store(
      2, {{"w", {1, 0}}, {"a", {1, 0}}, {"b", {0, 1}}});
  const auto got = nearest_neighbors(store, "w", 2);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].word, "a");
  EXPECT_NEAR(got[0].score, 1.0, 1e-15);
  EXPECT_EQ(got[1].word, "b");
  EXPECT_NEAR(got[1].score, 0.0, 1e-15);
}

TEST(NearestNeighbors, AbsentQueryAndOversizedK) {
  const WordVectorStore store(
      2, {{"w", {1, 0}}, {"b", {0, 1}}, {"a", {0, 1}}});
  EXPECT_TRUE(nearest_neighbors(store, "zzz", 3).empty());
  const auto all = nearest_neighbors(store, "w", 50);
  ASSERT_EQ(all.size(), 2u);
  // Equal scores fall back to ascending word order.
  EXPECT_EQ(all[0].word, "a");
  EXPECT_EQ(all[1].word, "b");
}

TEST(NearestNeighbors, MinSimilarityDropsWeakNeighbors) {
  const WordVectorStore store(
      2, {{"w", {1, 0}}, {"a", {1, 0.1}}, {"b", {0, 1}}});
  const auto got = nearest_neighbors(store, "w", 5, 0.5);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].word, "a");
}

TEST(NearestNeighborsProperty, AgreesWithExhaustiveScan) {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + rng.below(10);
    const std::size_t count = 2 + rng.below(400);
    std::vector<std::pair<std::string, std::vector<double>>> entries;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> v(dim);
      for (double& x : v) x = testing::gaussian(rng);
      entries.emplace_back("v" + std::to_string(i), std::move(v));
    }
    const WordVectorStore store(dim, entries);
    for (int q = 0; q < 10; ++q) {
      const std::string word = entries[rng.below(count)].first;
      const std::size_t k = 1 + rng.below(12);
      const auto got = nearest_neighbors(store, word, k);
      const auto want = testing::brute_force_neighbors(entries, word, k);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].word, want[i].first);
        EXPECT_NEAR(got[i].score, want[i].second, 1e-12);
        if (i > 0) EXPECT_GE(got[i - 1].score, got[i].score);
      }
    }
  }
}

TEST(MockEmbedder, DeterministicUnitAndPermutationInvariant) {
  MockEmbedder e(64, 3);
  EXPECT_EQ(e.embed_text("a b c"), e.embed_text("a b c"));
  EXPECT_NEAR(l2_norm(e.embed_text("a b c")), 1.0, 1e-12);
  EXPECT_EQ(e.embed_text("a b"), e.embed_text("b a"));
  EXPECT_EQ(l2_norm(e.embed_text("   ")), 0.0);
  EXPECT_EQ(e.embed_text("x").size(), 64u);
}

TEST(MockEmbedder, SeedChangesTheProjection) {
  MockEmbedder a(256, 1), b(256, 2);
  EXPECT_NE(a.embed_text("hello world"), b.embed_text("hello world"));
}

TEST(MockEmbedder, BatchMatchesSingle) {
  MockEmbedder e;
  const std::vector<std::string> texts{"a b", "c", "d e f"};
  const auto batch = e.embed(texts);
  ASSERT_EQ(batch.size(), 3u);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    EXPECT_EQ(batch[i], e.embed_one(texts[i]));
  }
}

TEST(MeanWordVector, AveragesKnownTokensAndNormalizes) {
  const WordVectorStore store(2, {{"a", {2, 0}}, {"b", {0, 2}}});
  const Vector v = mean_word_vector(store, {"a", "b", "oov"});
  EXPECT_NEAR(v[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v[1], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(mean_word_vector(store, {"oov"}), (Vector{0, 0}));
}

}  // namespace
}  // namespace bda::embeddings
