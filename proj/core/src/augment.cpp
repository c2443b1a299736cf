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

#include "bda/augment.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bda/error.hpp"

namespace bda::augment {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kSR: return "SR";
    case Method::kRS: return "RS";
    case Method::kBT: return "BT";
    case Method::kPP: return "PP";
  }
  return "?";
}

Method parse_method(std::string_view token) {
  std::string upper(token);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (Method m : kAllMethods) {
    if (to_string(m) == upper) return m;
  }
  throw DomainError("unknown augmentation method: " + std::string(token));
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view token = list.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      const Method m = parse_method(token);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw DomainError("no augmentation methods given");
  return out;
}

bool needs_backend(Method m) { return m == Method::kBT || m == Method::kPP; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPending: return "pending";
    case Verdict::kAccepted: return "accepted";
    case Verdict::kRejectedSemanticLow: return "rejected_semantic_low";
    case Verdict::kRejectedSemanticHigh: return "rejected_semantic_high";
    case Verdict::kRejectedLexical: return "rejected_lexical";
    case Verdict::kRejectedBackendError: return "rejected_backend_error";
  }
  return "?";
}

Verdict parse_verdict(std::string_view token) {
  for (Verdict v : {Verdict::kPending, Verdict::kAccepted,
                    Verdict::kRejectedSemanticLow,
                    Verdict::kRejectedSemanticHigh, Verdict::kRejectedLexical,
                    Verdict::kRejectedBackendError}) {
    if (to_string(v) == token) return v;
  }
  throw DomainError("unknown verdict: " + std::string(token));
}

void AugmentConfig::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (methods.empty()) throw DomainError("at least one method is required");
  if (synonym_k == 0) throw DomainError("synonym_k must be >= 1");
  if (!(scale_rate >= 0.0)) throw DomainError("scale_rate must be >= 0");
  if (source_lang == pivot_lang) {
    throw DomainError("pivot language must differ from the source language");
  }
}

int effective_n(const AugmentConfig& cfg, std::size_t token_count) {
  if (!cfg.length_scaled_n) return cfg.n;
  const auto scaled = static_cast<int>(
      std::floor(cfg.scale_rate * static_cast<double>(token_count)));
  return std::max(cfg.n, scaled);
}

std::string synonym_replacement(std::string_view text,
                                const AugmentConfig& cfg,
                                const embeddings::WordVectorStore& store,
                                const textops::StopwordSet& stop, Rng& rng) {
  textops::TokenSequence tokens = textops::tokenize(text);

  std::vector<std::size_t> positions;
  std::unordered_map<std::string, std::vector<embeddings::Neighbor>> pools;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (stop.contains(tok) || textops::is_punctuation(tok)) continue;
    auto it = pools.find(tok);
    if (it == pools.end()) {
      it = pools
               .emplace(tok, embeddings::nearest_neighbors(
                                 store, tok, cfg.synonym_k,
                                 cfg.min_synonym_similarity))
               .first;
    }
    if (!it->second.empty()) positions.push_back(i);
  }
  if (positions.empty()) return std::string(text);

  // Partial Fisher-Yates: the first `picks` slots are a uniform sample
  // without replacement.
  const auto picks = std::min<std::size_t>(
      static_cast<std::size_t>(effective_n(cfg, tokens.size())),
      positions.size());
  for (std::size_t i = 0; i < picks; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(
                                  rng.below(positions.size() - i));
    std::swap(positions[i], positions[j]);
  }
  std::sort(positions.begin(),
            positions.begin() + static_cast<std::ptrdiff_t>(picks));
  for (std::size_t i = 0; i < picks; ++i) {
    std::string& tok = tokens[positions[i]];
    const auto& pool = pools.at(tok);
    tok = pool[static_cast<std::size_t>(rng.below(pool.size()))].word;
  }
  return textops::detokenize(tokens);
}

std::string random_swap(std::string_view text, const AugmentConfig& cfg,
                        Rng& rng) {
  textops::TokenSequence tokens = textops::tokenize(text);
  if (tokens.size() < 2) return std::string(text);
  const int rounds = effective_n(cfg, tokens.size());
  for (int r = 0; r < rounds; ++r) {
    const auto i = static_cast<std::size_t>(rng.below(tokens.size()));
    auto j = static_cast<std::size_t>(rng.below(tokens.size() - 1));
    if (j >= i) ++j;
    std::swap(tokens[i], tokens[j]);
  }
  return textops::detokenize(tokens);
}

std::string back_translate(const std::string& text,
                           backend::ModelBackend& backend,
                           const AugmentConfig& cfg) {
  const std::string pivot =
      backend.translate(text, cfg.source_lang, cfg.pivot_lang);
  if (textops::is_blank(pivot)) throw BackendError("empty pivot translation");
  std::string back = backend.translate(pivot, cfg.pivot_lang, cfg.source_lang);
  if (textops::is_blank(back)) throw BackendError("empty back-translation");
  return back;
}

std::string paraphrase(const std::string& text,
                       backend::ModelBackend& backend) {
  std::string out = backend.paraphrase(text);
  if (textops::is_blank(out)) throw BackendError("empty paraphrase");
  return out;
}

}  // namespace bda::augment
