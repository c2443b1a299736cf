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

#include "bda/embeddings.hpp"
#include "bda/filter.hpp"
#include "bda/textops.hpp"
#include "synthetic.hpp"

namespace {

using namespace bda;

std::string sentence(std::size_t len, std::uint64_t seed) {
  Rng rng(seed);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) s += i % 7 == 0 ? ", " : " ";
    s += testing::letter_word(rng, 2, 8);
  }
  return s + "।";
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = sentence(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(textops::tokenize(text));
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(16)->Arg(128)->Arg(1024);

void BM_CharNgrams(benchmark::State& state) {
  const std::string text = sentence(64, 2);
  for (auto _ : state) benchmark::DoNotOptimize(textops::char_ngrams(text, 2, 5));
}
BENCHMARK(BM_CharNgrams);

void BM_SentenceBleu(benchmark::State& state) {
  Rng rng(3);
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto cand = testing::random_tokens(rng, len, 10);
  const auto ref = testing::random_tokens(rng, len, 10);
  for (auto _ : state) benchmark::DoNotOptimize(filter::sentence_bleu(cand, ref, 4));
}
BENCHMARK(BM_SentenceBleu)->Arg(10)->Arg(30)->Arg(100);

void BM_NearestNeighbors(benchmark::State& state) {
  Rng rng(4);
  const auto count = static_cast<std::size_t>(state.range(0));
  std::vector<std::pair<std::string, embeddings::Vector>> entries;
  for (std::size_t i = 0; i < count; ++i) {
    embeddings::Vector v(100);
    for (double& x : v) x = testing::gaussian(rng);
    entries.emplace_back("w" + std::to_string(i), std::move(v));
  }
  const embeddings::WordVectorStore store(100, std::move(entries));
  for (auto _ : state) {
    benchmark::DoNotOptimize(embeddings::nearest_neighbors(store, "w0", 5));
  }
}
BENCHMARK(BM_NearestNeighbors)->Arg(1000)->Arg(10000);

void BM_MockEmbed(benchmark::State& state) {
  embeddings::MockEmbedder mock;
  const std::string text = sentence(32, 5);
  for (auto _ : state) benchmark::DoNotOptimize(mock.embed_text(text));
}
BENCHMARK(BM_MockEmbed);

}  // namespace
