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

#include "bda/evalharness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bda/error.hpp"
#include "synthetic.hpp"

namespace bda::eval {
namespace {

corpus::LabeledDataset docs(std::vector<std::pair<std::string, std::string>> rows) {
  std::vector<corpus::Document> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.push_back({"r" + std::to_string(i), rows[i].first, rows[i].second});
  }
  return corpus::LabeledDataset(std::move(out));
}

SparseVector dense(std::vector<double> v) {
  SparseVector s;
  s.dim = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) s.entries.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  }
  return s;
}

// Three classes with disjoint vocabularies.
corpus::LabeledDataset separable(std::size_t per_class, std::uint64_t seed,
                                 const std::string& prefix) {
  Rng rng(seed);
  std::vector<corpus::Document> out;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (int c = 0; c < 3; ++c) {
      std::vector<std::string> tokens;
      const std::size_t len = 3 + rng.below(6);
      for (std::size_t t = 0; t < len; ++t) {
        tokens.push_back(std::string(1, static_cast<char>('x' + c)) +
                         std::to_string(rng.below(25)));
      }
      out.push_back({prefix + std::to_string(out.size()), testing::join(tokens),
                     "L" + std::to_string(c)});
    }
  }
  return corpus::LabeledDataset(std::move(out));
}

TEST(FeatureSpec, ParseAndLabel) {
  const FeatureSpec s = parse_feature_spec("u+B+c3+E");
  EXPECT_EQ(s.word_orders, (std::set<int>{1, 2}));
  EXPECT_EQ(s.char_orders, (std::set<int>{3}));
  EXPECT_TRUE(s.use_embeddings);
  EXPECT_EQ(s.label(), "U+B+C3+E");
  EXPECT_EQ(parse_feature_specs("u, c2+c3").size(), 2u);
}

TEST(FeatureSpec, UnknownTokenIsNamed) {
  try {
    parse_feature_spec("u+x9");
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("x9"), std::string::npos);
  }
  EXPECT_THROW(FeatureSpec{}.validate(), DomainError);
}

TEST(FeatureSpec, DefaultGridHasTwentyTwoDistinctRows) {
  const auto specs = default_feature_specs();
  ASSERT_EQ(specs.size(), 22u);
  std::set<std::string> labels;
  for (const auto& s : specs) {
    labels.insert(s.label());
    EXPECT_EQ(parse_feature_spec(s.label()), s);
  }
  EXPECT_EQ(labels.size(), 22u);
  EXPECT_EQ(specs.front().label(), "U");
  EXPECT_EQ(specs.back().label(), "U+B+T+C2+C3+C4+C5+E");
}

TEST(FitVectorizer, SingleDocumentUnigrams) {
  const auto v = fit_vectorizer(docs({{"a b", "A"}}), parse_feature_spec("u"), nullptr);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"w:a", "w:b"}));
  EXPECT_DOUBLE_EQ(v.idf()[0], 1.0);
  EXPECT_DOUBLE_EQ(v.idf()[1], 1.0);
}

TEST(FitVectorizer, CharBigramsStayInsideTokens) {
  const auto v = fit_vectorizer(docs({{"ab", "A"}}), parse_feature_spec("c2"), nullptr);
  EXPECT_EQ(v.terms(), (std::vector<std::string>{"c:ab"}));
}

TEST(FitVectorizer, EmbeddingsNeedAStore) {
  EXPECT_THROW(fit_vectorizer(docs({{"a", "A"}}), parse_feature_spec("e"), nullptr),
               DomainError);
  EXPECT_THROW(fit_vectorizer(corpus::LabeledDataset{}, parse_feature_spec("u"),
                              nullptr),
               DomainError);
}

TEST(FitVectorizer, HandComputedTfIdf) {
  const auto train = docs({{"a b", "A"}, {"a c c", "B"}, {"b c d", "A"}});
  const auto v = fit_vectorizer(train, parse_feature_spec("u"), nullptr);
  ASSERT_EQ(v.terms(), (std::vector<std::string>{"w:a", "w:b", "w:c", "w:d"}));
  const double common = std::log(4.0 / 3.0) + 1.0;  // df = 2 of N = 3
  const double rare = std::log(4.0 / 2.0) + 1.0;    // df = 1
  EXPECT_NEAR(v.idf()[0], 1.2876820724517808, 1e-15);
  EXPECT_NEAR(v.idf()[3], 1.6931471805599454, 1e-15);

  const auto x = vectorize(v, "a c c", nullptr).to_dense();
  const double n1 = std::sqrt(common * common + 4 * common * common);
  EXPECT_NEAR(x[0], common / n1, 1e-9);
  EXPECT_NEAR(x[1], 0.0, 1e-9);
  EXPECT_NEAR(x[2], 2 * common / n1, 1e-9);
  EXPECT_NEAR(x[2], 2 / std::sqrt(5.0), 1e-9);

  const auto y = vectorize(v, "b c d", nullptr).to_dense();
  const double n2 = std::sqrt(2 * common * common + rare * rare);
  EXPECT_NEAR(y[1], common / n2, 1e-9);
  EXPECT_NEAR(y[2], common / n2, 1e-9);
  EXPECT_NEAR(y[3], rare / n2, 1e-9);
}

TEST(Vectorize, EdgeCases) {
  const auto v = fit_vectorizer(docs({{"a b", "A"}, {"a", "B"}}),
                                parse_feature_spec("u"), nullptr);
  const auto none = vectorize(v, "zzz qqq", nullptr);
  EXPECT_TRUE(none.entries.empty());
  EXPECT_EQ(none.dim, 2u);
  const auto one = vectorize(v, "b b b", nullptr).to_dense();
  EXPECT_DOUBLE_EQ(one[1], 1.0);
  const auto v2 = fit_vectorizer(docs({{"a b", "A"}}), parse_feature_spec("u"), nullptr);
  const auto two = vectorize(v2, "a b", nullptr).to_dense();
  EXPECT_NEAR(two[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(two[1], 1 / std::sqrt(2.0), 1e-15);
}

TEST(Vectorize, EmbeddingTailIsAppendedAndNormalized) {
  const embeddings::WordVectorStore store(2, {{"a", {3, 4}}});
  const auto v = fit_vectorizer(docs({{"a b", "A"}}),
                                parse_feature_spec("u+e"), &store);
  EXPECT_EQ(v.dim(), 4u);
  EXPECT_EQ(v.embed_dim(), 2u);
  const auto x = vectorize(v, "a", &store).to_dense();
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_NEAR(x[2], 0.6, 1e-15);
  EXPECT_NEAR(x[3], 0.8, 1e-15);
  const auto z = vectorize(v, "b", &store).to_dense();
  EXPECT_EQ(z[2], 0.0);
  EXPECT_EQ(z[3], 0.0);
}

TEST(VectorizerProperty, DimensionIsSumOfOrderVocabularies) {
  const testing::SynonymWorld world;
  const auto store = world.store(2);
  const auto train = world.documents(10, 3, "t");
  const auto all = parse_feature_spec("u+b+t+c2+c3+c4+c5+e");
  const auto v = fit_vectorizer(train, all, &store);
  std::size_t total = 0;
  for (const char* part : {"u", "b", "t", "c2", "c3", "c4", "c5"}) {
    total += fit_vectorizer(train, parse_feature_spec(part), nullptr)
                 .vocabulary_size();
  }
  EXPECT_EQ(v.vocabulary_size(), total);
  EXPECT_EQ(v.dim(), total + store.dim());
}

TEST(VectorizerProperty, TestContentNeverLeaks) {
  const auto train = separable(5, 1, "a");
  const auto spec = parse_feature_spec("u+c3");
  const auto before = fit_vectorizer(train, spec, nullptr);
  (void)vectorize(before, "entirely new words here", nullptr);
  const auto after = fit_vectorizer(train, spec, nullptr);
  EXPECT_EQ(before.terms(), after.terms());
  EXPECT_TRUE(std::equal(before.idf().begin(), before.idf().end(),
                         after.idf().begin(), after.idf().end()));
  for (double idf : after.idf()) {
    EXPECT_TRUE(std::isfinite(idf));
    EXPECT_GT(idf, 0.0);
  }
}

TEST(TrainClassifier, SeparableToySetIsFit) {
  Rng rng(3);
  std::vector<SparseVector> X;
  std::vector<std::string> y;
  for (int i = 0; i < 20; ++i) {
    const bool pos = i % 2 == 0;
    X.push_back(dense({pos ? 1.0 + rng.uniform() : -1.0 - rng.uniform(),
                       rng.uniform() - 0.5}));
    y.push_back(pos ? "pos" : "neg");
  }
  const auto model = train_classifier(X, y);
  for (std::size_t i = 0; i < X.size(); ++i) EXPECT_EQ(model.predict(X[i]), y[i]);
}

TEST(TrainClassifier, BitForBitDeterministic) {
  const auto train = separable(10, 4, "d");
  const auto v = fit_vectorizer(train, parse_feature_spec("u"), nullptr);
  std::vector<SparseVector> X;
  std::vector<std::string> y;
  for (const auto& d : train) {
    X.push_back(vectorize(v, d.text, nullptr));
    y.push_back(d.label);
  }
  const TrainParams hp{1e-4, 5, 77};
  const auto a = train_classifier(X, y, hp);
  const auto b = train_classifier(X, y, hp);
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_EQ(a.biases(), b.biases());
  EXPECT_EQ(a.labels(), (std::vector<std::string>{"L0", "L1", "L2"}));
}

TEST(TrainClassifier, RejectsDegenerateInput) {
  const std::vector<SparseVector> X{dense({1}), dense({2})};
  const std::vector<std::string> one{"A", "A"};
  EXPECT_THROW(train_classifier(X, one), DomainError);
  const std::vector<std::string> short_y{"A"};
  EXPECT_THROW(train_classifier(X, short_y), DomainError);
}

TEST(LinearModel, TiesGoToLowestLabelIndex) {
  const LinearModel m({"a", "b", "c"}, {{0.0}, {0.0}, {0.0}}, {0.0, 0.0, 0.0});
  EXPECT_EQ(m.predict(dense({5.0})), "a");
  const LinearModel m2({"a", "b", "c"}, {{0.0}, {1.0}, {1.0}}, {0.0, 0.0, 0.0});
  EXPECT_EQ(m2.predict(dense({5.0})), "b");
}

TEST(MacroF1, HandCases) {
  const std::vector<std::string> gold{"A", "A", "B", "B"};
  EXPECT_DOUBLE_EQ(macro_f1(gold, gold), 1.0);
  const std::vector<std::string> all_a{"A", "A", "A", "A"};
  EXPECT_NEAR(macro_f1(gold, all_a), 1.0 / 3.0, 1e-15);
  // "C" only appears in predictions and is ignored.
  const std::vector<std::string> stray{"A", "A", "B", "C"};
  EXPECT_NEAR(macro_f1(gold, stray), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  const std::vector<std::string> short_pred{"A"};
  EXPECT_THROW(macro_f1(gold, short_pred), DomainError);
}

TEST(MacroF1Property, PermutationInvariant) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<std::string> gold, pred;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back("c" + std::to_string(rng.below(4)));
      pred.push_back("c" + std::to_string(rng.below(5)));
    }
    const double base = macro_f1(gold, pred);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<std::string> g2, p2;
    for (std::size_t i : perm) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    EXPECT_NEAR(macro_f1(g2, p2), base, 1e-12);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
  }
}

TEST(Evaluate, SeparableThreeClassReachesHighF1) {
  const auto train = separable(100, 5, "tr");
  const auto test = separable(40, 6, "te");
  EXPECT_GE(evaluate(train, test, parse_feature_spec("u"), nullptr), 0.95);
}

TEST(Report, RowsRoundBeforeDiff) {
  const EvalRow r = make_row("U", 0.5, 0.62424, 0.65786);
  EXPECT_DOUBLE_EQ(r.f1_normal, 62.42);
  EXPECT_DOUBLE_EQ(r.f1_augmented, 65.79);
  EXPECT_DOUBLE_EQ(r.diff, 3.37);
}

TEST(Report, CsvRoundTrip) {
  EvalReport report;
  report.append(make_row("U+B", 0.15, 0.5, 0.55));
  report.append(make_row("C2", 1.0, 0.7, 0.65));
  const std::string csv = report.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "feature_set,clip,f1_normal,f1_augmented,diff");
  std::istringstream in(csv);
  const auto back = EvalReport::from_csv(in);
  ASSERT_EQ(back.rows().size(), 2u);
  EXPECT_EQ(back.to_csv(), csv);
  EXPECT_DOUBLE_EQ(back.rows()[1].diff, -5.0);
  std::istringstream bad("feature_set,clip,f1_normal,f1_augmented,diff\nU,1,x,2,3\n");
  EXPECT_THROW(EvalReport::from_csv(bad), ParseError);
}

TEST(Ablate, RejectAllAtFullClipLeavesScoresUnchanged) {
  const auto train = separable(8, 7, "tr");
  const auto test = separable(4, 8, "te");
  embeddings::MockEmbedder mock;
  pipeline::PipelineConfig pipe;
  pipe.augment.methods = {augment::Method::kRS};
  pipe.filter = {0.0, 1.0, 0.0, 4};
  const std::vector<FeatureSpec> specs{parse_feature_spec("u"),
                                       parse_feature_spec("c2+c3")};
  const std::vector<double> clips{1.0};
  const auto report = ablate(train, test, specs, clips, pipe, {.embedder = &mock},
                             {1e-4, 3, 0});
  ASSERT_EQ(report.rows().size(), 2u);
  for (const auto& r : report.rows()) {
    EXPECT_EQ(r.f1_normal, r.f1_augmented);
    EXPECT_EQ(r.diff, 0.0);
  }
}

TEST(Ablate, GridShapeIsSpecMajor) {
  const auto train = separable(10, 9, "tr");
  const auto test = separable(3, 10, "te");
  embeddings::MockEmbedder mock;
  pipeline::PipelineConfig pipe;
  pipe.augment.methods = {augment::Method::kRS};
  pipe.filter = {0.0, 1.0, 1.0, 4};
  const std::vector<FeatureSpec> specs{parse_feature_spec("u"),
                                       parse_feature_spec("b")};
  const std::vector<double> clips{0.15, 0.5, 1.0};
  const auto report = ablate(train, test, specs, clips, pipe, {.embedder = &mock},
                             {1e-4, 2, 0});
  ASSERT_EQ(report.rows().size(), 6u);
  EXPECT_EQ(report.rows()[0].feature_set, "U");
  EXPECT_EQ(report.rows()[2].clip, 1.0);
  EXPECT_EQ(report.rows()[3].feature_set, "B");
  for (const auto& r : report.rows()) {
    EXPECT_DOUBLE_EQ(r.diff, round2(r.f1_augmented - r.f1_normal));
  }
}

}  // namespace
}  // namespace bda::eval
