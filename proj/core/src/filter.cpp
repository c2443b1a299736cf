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

#include "bda/filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "bda/error.hpp"

namespace bda::filter {
namespace {

using Counts = std::unordered_map<std::string, int>;

Counts count_ngrams(const textops::TokenSequence& tokens, std::size_t order) {
  Counts counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t j = 1; j < order; ++j) {
      gram.push_back(' ');
      gram += tokens[i + j];
    }
    ++counts[gram];
  }
  return counts;
}

}  // namespace

void FilterConfig::validate() const {
  if (!(semantic_low >= 0.0 && semantic_low <= semantic_high &&
        semantic_high <= 1.0)) {
    throw DomainError("semantic band must satisfy 0 <= low <= high <= 1");
  }
  if (!(lexical_max >= 0.0 && lexical_max <= 1.0)) {
    throw DomainError("lexical_max must lie in [0, 1]");
  }
  if (bleu_max_order < 1) throw DomainError("bleu_max_order must be >= 1");
}

double sentence_bleu(const textops::TokenSequence& candidate,
                     const textops::TokenSequence& reference, int max_order) {
  if (max_order < 1) throw DomainError("BLEU max_order must be >= 1");
  const std::size_t c = candidate.size();
  const std::size_t r = reference.size();
  if (c == 0) return 0.0;

  const std::size_t orders =
      std::min(static_cast<std::size_t>(max_order), c);
  double log_sum = 0.0;
  double smooth = 1.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    const Counts cand = count_ngrams(candidate, n);
    const Counts ref = count_ngrams(reference, n);
    const double total = static_cast<double>(c - n + 1);
    int matches = 0;
    for (const auto& [gram, count] : cand) {
      if (const auto it = ref.find(gram); it != ref.end()) {
        matches += std::min(count, it->second);
      }
    }
    if (matches == 0) {
      smooth *= 2.0;
      log_sum += std::log(1.0 / (smooth * total));
    } else {
      log_sum += std::log(matches / total);
    }
  }
  const double brevity =
      c >= r ? 1.0
             : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  const double score =
      brevity * std::exp(log_sum / static_cast<double>(orders));
  return std::clamp(score, 0.0, 1.0);
}

double sentence_bleu(std::string_view candidate, std::string_view reference,
                     int max_order) {
  return sentence_bleu(textops::tokenize(candidate),
                       textops::tokenize(reference), max_order);
}

augment::Candidate apply_filter(augment::Candidate cand,
                                const FilterConfig& cfg,
                                embeddings::SentenceEmbedder& embedder) {
  if (cand.verdict != augment::Verdict::kPending) {
    throw DomainError("candidate from '" + cand.source_id +
                      "' was already filtered");
  }
  const std::string pair[] = {cand.original, cand.augmented};
  const auto vectors = embedder.embed(pair);
  if (vectors.size() != 2) throw BackendError("embedder returned wrong batch");

  const double semantic = embeddings::cosine(vectors[0], vectors[1]);
  cand.semantic = semantic;
  if (semantic < cfg.semantic_low) {
    cand.verdict = augment::Verdict::kRejectedSemanticLow;
    return cand;
  }
  if (semantic > cfg.semantic_high) {
    cand.verdict = augment::Verdict::kRejectedSemanticHigh;
    return cand;
  }
  const double lexical =
      sentence_bleu(cand.augmented, cand.original, cfg.bleu_max_order);
  cand.lexical = lexical;
  cand.verdict = lexical > cfg.lexical_max ? augment::Verdict::kRejectedLexical
                                           : augment::Verdict::kAccepted;
  return cand;
}

}  // namespace bda::filter
