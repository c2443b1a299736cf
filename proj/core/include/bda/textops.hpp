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

#ifndef BDA_TEXTOPS_HPP_
#define BDA_TEXTOPS_HPP_

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Unicode-aware tokenization and n-gram extraction shared by every other
// module. All text is UTF-8 and is NFC-normalized on entry.
namespace bda::textops {

using TokenSequence = std::vector<std::string>;

// NFC normalization. Ill-formed UTF-8 sequences become U+FFFD.
std::string nfc(std::string_view text);

// True when `text` has no character outside the Unicode White_Space set.
bool is_blank(std::string_view text);

// True when every code point of a non-empty token is punctuation (general
// category P*).
bool is_punctuation(std::string_view token);

// Splits on Unicode whitespace and detaches punctuation at the edges of each
// chunk; every detached mark becomes its own token. Word-internal punctuation
// ("e.g", "don't") stays in place.
TokenSequence tokenize(std::string_view text);

std::string detokenize(const TokenSequence& tokens);

// Contiguous word n-grams of every order in [n_min, n_max], order-major,
// joined with a single space. Throws DomainError unless 1 <= n_min <= n_max.
std::vector<std::string> word_ngrams(const TokenSequence& tokens, int n_min,
                                     int n_max);

// Character n-grams (over code points) of each token of `text`
// independently; nothing spans a token boundary.
std::vector<std::string> char_ngrams(std::string_view text, int n_min,
                                     int n_max);

// Code points of `token` as separate UTF-8 strings.
std::vector<std::string> code_points(std::string_view token);

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(const std::vector<std::string>& words);

  // Newline-delimited UTF-8, one word per line. Blank lines and lines
  // starting with '#' are skipped; surrounding whitespace is trimmed.
  static StopwordSet load(const std::filesystem::path& path);
  static StopwordSet parse(std::istream& in);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace bda::textops

#endif  // BDA_TEXTOPS_HPP_
