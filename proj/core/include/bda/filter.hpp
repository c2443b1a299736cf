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

#ifndef BDA_FILTER_HPP_
#define BDA_FILTER_HPP_

#include <string_view>

#include "bda/augment.hpp"
#include "bda/embeddings.hpp"
#include "bda/textops.hpp"

namespace bda::filter {

struct FilterConfig {
  double semantic_low = 0.85;
  double semantic_high = 0.99;
  double lexical_max = 0.45;
  int bleu_max_order = 4;

  // Requires 0 <= low <= high <= 1, 0 <= lexical_max <= 1 and
  // bleu_max_order >= 1; throws DomainError otherwise.
  void validate() const;
};

// Sentence-level BLEU of `candidate` against a single `reference`.
//
// Clipped n-gram precisions for n = 1..max_order; orders for which the
// candidate has no n-grams are dropped. A retained order with zero matches
// is smoothed to 1 / (2^k * total_n), k counting such orders from 1. The
// geometric mean of the retained precisions is scaled by the brevity
// penalty exp(1 - r/c) when c < r. An empty candidate scores 0.
double sentence_bleu(const textops::TokenSequence& candidate,
                     const textops::TokenSequence& reference, int max_order);
double sentence_bleu(std::string_view candidate, std::string_view reference,
                     int max_order = 4);

// Semantic band, then lexical ceiling:
//   semantic <  low          -> rejected_semantic_low
//   semantic >  high         -> rejected_semantic_high
//   BLEU(aug, orig) > max    -> rejected_lexical
//   otherwise                -> accepted
// BLEU is computed only when the band passes. Embedder exceptions propagate
// and leave the input candidate untouched. Throws DomainError when `cand`
// is not pending.
augment::Candidate apply_filter(augment::Candidate cand,
                                const FilterConfig& cfg,
                                embeddings::SentenceEmbedder& embedder);

}  // namespace bda::filter

#endif  // BDA_FILTER_HPP_
