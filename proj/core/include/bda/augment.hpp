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

#ifndef BDA_AUGMENT_HPP_
#define BDA_AUGMENT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bda/backend.hpp"
#include "bda/embeddings.hpp"
#include "bda/random.hpp"
#include "bda/textops.hpp"

namespace bda::augment {

// Synonym Replacement, Random Swap, Back-Translation, Paraphrasing.
enum class Method { kSR, kRS, kBT, kPP };

inline constexpr Method kAllMethods[] = {Method::kSR, Method::kRS,
                                         Method::kBT, Method::kPP};

// "SR", "RS", "BT", "PP".
std::string_view to_string(Method m);
// Case-insensitive inverse of to_string(); throws DomainError naming the
// token otherwise.
Method parse_method(std::string_view token);
// Comma-separated list such as "sr,rs". Duplicates are collapsed, order kept.
std::vector<Method> parse_methods(std::string_view list);

bool needs_backend(Method m);

enum class Verdict {
  kPending,
  kAccepted,
  kRejectedSemanticLow,
  kRejectedSemanticHigh,
  kRejectedLexical,
  kRejectedBackendError,
};

// Snake-case names used in audit logs ("accepted", "rejected_lexical", ...).
std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view token);

// One generated text on its way through the filter. A score is set exactly
// when the corresponding filter stage ran; the verdict leaves kPending once.
struct Candidate {
  std::string source_id;
  Method method = Method::kSR;
  std::string original;
  std::string augmented;
  std::optional<double> semantic;
  std::optional<double> lexical;
  Verdict verdict = Verdict::kPending;
};

struct AugmentConfig {
  int n = 2;  // alterations per SR/RS candidate
  std::vector<Method> methods{Method::kSR, Method::kRS, Method::kBT,
                              Method::kPP};
  std::size_t synonym_k = 5;
  bool length_scaled_n = false;
  double scale_rate = 0.1;
  // Neighbors scoring below this are not offered as synonyms.
  std::optional<double> min_synonym_similarity;
  std::string source_lang = "bn";
  std::string pivot_lang = "en";

  // Throws DomainError on n < 1, empty methods, synonym_k == 0, negative
  // scale_rate or identical languages.
  void validate() const;
};

// max(n, floor(scale_rate * token_count)) when length scaling is on, n
// otherwise.
int effective_n(const AugmentConfig& cfg, std::size_t token_count);

// Replaces min(effective n, #candidates) distinct positions, chosen
// uniformly among tokens that are not stopwords, not pure punctuation and
// have at least one neighbor in `store`. Each chosen token becomes a uniform
// draw from its top-synonym_k neighbors. Returns `text` unchanged when
// nothing is eligible.
std::string synonym_replacement(std::string_view text,
                                const AugmentConfig& cfg,
                                const embeddings::WordVectorStore& store,
                                const textops::StopwordSet& stop, Rng& rng);

// effective-n swaps of two distinct, uniformly drawn positions. Inputs with
// fewer than two tokens come back unchanged.
std::string random_swap(std::string_view text, const AugmentConfig& cfg,
                        Rng& rng);

// source -> pivot -> source through the backend.
std::string back_translate(const std::string& text,
                           backend::ModelBackend& backend,
                           const AugmentConfig& cfg = {});

std::string paraphrase(const std::string& text,
                       backend::ModelBackend& backend);

}  // namespace bda::augment

#endif  // BDA_AUGMENT_HPP_
