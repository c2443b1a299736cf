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

#include <benchmark/benchmark.h>

#include "bda/evalharness.hpp"
#include "bda/pipeline.hpp"
#include "synthetic.hpp"

namespace {

using namespace bda;

void BM_AugmentDataset(benchmark::State& state) {
  const testing::SynonymWorld world;
  const auto store = world.store(1);
  const auto ds = world.documents(100, 2, "b");
  embeddings::MockEmbedder mock;
  backend::MockBackend backend;
  pipeline::PipelineConfig cfg;
  cfg.filter = {0.5, 0.99, 0.8, 4};
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pipeline::augment_dataset(ds, cfg, {&store, nullptr, &mock, &backend}));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(ds.size()));
}
BENCHMARK(BM_AugmentDataset)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FitAndVectorize(benchmark::State& state) {
  const testing::SynonymWorld world;
  const auto train = world.documents(100, 3, "t");
  const auto spec = eval::parse_feature_spec("u+b+t+c2+c3+c4+c5");
  for (auto _ : state) {
    const auto v = eval::fit_vectorizer(train, spec, nullptr);
    for (const auto& d : train) benchmark::DoNotOptimize(eval::vectorize(v, d.text, nullptr));
  }
}
BENCHMARK(BM_FitAndVectorize)->Unit(benchmark::kMillisecond);

void BM_TrainClassifier(benchmark::State& state) {
  const testing::SynonymWorld world;
  const auto train = world.documents(100, 4, "t");
  const auto v = eval::fit_vectorizer(train, eval::parse_feature_spec("u+b"), nullptr);
  std::vector<eval::SparseVector> X;
  std::vector<std::string> y;
  for (const auto& d : train) {
    X.push_back(eval::vectorize(v, d.text, nullptr));
    y.push_back(d.label);
  }
  for (auto _ : state) benchmark::DoNotOptimize(eval::train_classifier(X, y));
}
BENCHMARK(BM_TrainClassifier)->Unit(benchmark::kMillisecond);

}  // namespace
