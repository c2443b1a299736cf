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

#include "bda/textops.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>

#include "bda/error.hpp"

namespace bda::textops {
namespace {

const icu::Normalizer2& nfc_normalizer() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || norm == nullptr) {
    throw Error(std::string("ICU NFC normalizer unavailable: ") +
                u_errorName(status));
  }
  return *norm;
}

// Decoded code point plus the byte range it occupies in the source string.
struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) c = 0xFFFD;
    out.push_back({c, static_cast<std::size_t>(begin),
                   static_cast<std::size_t>(i)});
  }
  return out;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }
bool is_punct(UChar32 c) { return u_ispunct(c) != 0; }

void check_orders(int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw DomainError("n-gram orders must satisfy 1 <= n_min <= n_max, got " +
                      std::to_string(n_min) + ".." + std::to_string(n_max));
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string nfc(std::string_view text) {
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2& norm = nfc_normalizer();
  if (norm.isNormalized(source, status) && U_SUCCESS(status)) {
    std::string out;
    source.toUTF8String(out);
    return out;
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = norm.normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(std::string("NFC normalization failed: ") +
                u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_blank(std::string_view text) {
  for (const CodePoint& cp : decode(text)) {
    if (!is_space(cp.value)) return false;
  }
  return true;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  for (const CodePoint& cp : decode(token)) {
    if (!is_punct(cp.value)) return false;
  }
  return true;
}

TokenSequence tokenize(std::string_view text) {
  const std::string normalized = nfc(text);
  const std::vector<CodePoint> cps = decode(normalized);
  TokenSequence tokens;

  auto emit_chunk = [&](std::size_t first, std::size_t last) {
    // [first, last) indexes into cps; chunk contains no whitespace.
    std::size_t lo = first;
    std::size_t hi = last;
    std::vector<std::string> trailing;
    while (lo < hi && is_punct(cps[lo].value)) {
      tokens.emplace_back(normalized.substr(cps[lo].begin,
                                            cps[lo].end - cps[lo].begin));
      ++lo;
    }
    while (hi > lo && is_punct(cps[hi - 1].value)) {
      trailing.emplace_back(normalized.substr(
          cps[hi - 1].begin, cps[hi - 1].end - cps[hi - 1].begin));
      --hi;
    }
    if (lo < hi) {
      tokens.emplace_back(
          normalized.substr(cps[lo].begin, cps[hi - 1].end - cps[lo].begin));
    }
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  };

  std::size_t start = 0;
  bool in_chunk = false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (is_space(cps[i].value)) {
      if (in_chunk) emit_chunk(start, i);
      in_chunk = false;
    } else if (!in_chunk) {
      start = i;
      in_chunk = true;
    }
  }
  if (in_chunk) emit_chunk(start, cps.size());
  return tokens;
}

std::string detokenize(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> word_ngrams(const TokenSequence& tokens, int n_min,
                                     int n_max) {
  check_orders(n_min, n_max);
  std::vector<std::string> grams;
  const std::size_t len = tokens.size();
  for (int n = n_min; n <= n_max; ++n) {
    const auto order = static_cast<std::size_t>(n);
    if (order > len) break;
    for (std::size_t i = 0; i + order <= len; ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < order; ++j) {
        gram.push_back(' ');
        gram += tokens[i + j];
      }
      grams.push_back(std::move(gram));
    }
  }
  return grams;
}

std::vector<std::string> char_ngrams(std::string_view text, int n_min,
                                     int n_max) {
  check_orders(n_min, n_max);
  std::vector<std::string> grams;
  for (const std::string& token : tokenize(text)) {
    const std::vector<CodePoint> cps = decode(token);
    const std::size_t len = cps.size();
    for (int n = n_min; n <= n_max; ++n) {
      const auto order = static_cast<std::size_t>(n);
      if (order > len) break;
      for (std::size_t i = 0; i + order <= len; ++i) {
        const std::size_t begin = cps[i].begin;
        const std::size_t end = cps[i + order - 1].end;
        grams.emplace_back(token.substr(begin, end - begin));
      }
    }
  }
  return grams;
}

std::vector<std::string> code_points(std::string_view token) {
  std::vector<std::string> out;
  for (const CodePoint& cp : decode(token)) {
    out.emplace_back(token.substr(cp.begin, cp.end - cp.begin));
  }
  return out;
}

StopwordSet::StopwordSet(const std::vector<std::string>& words) {
  for (const std::string& w : words) {
    const std::string_view trimmed = trim(w);
    if (!trimmed.empty()) words_.insert(nfc(trimmed));
  }
}

StopwordSet StopwordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open stopword file: " + path.string());
  return parse(in);
}

StopwordSet StopwordSet::parse(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    words.emplace_back(trimmed);
  }
  return StopwordSet(words);
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.contains(nfc(word));
}

}  // namespace bda::textops
