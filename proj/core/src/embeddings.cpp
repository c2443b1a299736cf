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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "bda/error.hpp"
#include "bda/random.hpp"
#include "bda/textops.hpp"

namespace bda::embeddings {
namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

double l2_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

void normalize(std::span<double> v) {
  const double n = l2_norm(v);
  if (n == 0.0) return;
  for (double& x : v) x /= n;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DomainError("cosine: dimension mismatch (" +
                      std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  const double nu = l2_norm(u);
  const double nv = l2_norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

WordVectorStore::WordVectorStore(
    std::size_t dim, std::vector<std::pair<std::string, Vector>> entries)
    : dim_(dim) {
  if (dim_ == 0) throw DomainError("word vector dimension must be positive");
  for (auto& [word, values] : entries) {
    if (values.size() != dim_) {
      throw DomainError("vector for '" + word + "' has " +
                        std::to_string(values.size()) +
                        " components, expected " + std::to_string(dim_));
    }
    insert(std::move(word), values);
  }
}

void WordVectorStore::insert(std::string word, std::span<const double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw FormatError("non-finite component in vector for '" + word + "'");
    }
  }
  word = textops::nfc(word);
  if (auto it = index_.find(word); it != index_.end()) {
    ++duplicates_;
    std::copy(values.begin(), values.end(),
              data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    norms_[it->second] = l2_norm(values);
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
  norms_.push_back(l2_norm(values));
}

bool WordVectorStore::contains(std::string_view word) const {
  return index_.contains(textops::nfc(word));
}

std::optional<std::span<const double>> WordVectorStore::find(
    std::string_view word) const {
  const auto it = index_.find(textops::nfc(word));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

WordVectorStore parse_word_vectors(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  std::size_t dim = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  {
    const auto header = split_spaces(line);
    if (header.size() != 2 || !parse_number(header[0], count) ||
        !parse_number(header[1], dim) || dim == 0) {
      throw ParseError("word vector header must be \"<count> <dim>\"",
                       line_no);
    }
  }

  WordVectorStore store(dim, {});
  std::size_t rows = 0;
  Vector values(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto parts = split_spaces(line);
    if (parts.size() != dim + 1) {
      throw ParseError(
          "expected " + std::to_string(dim) + " components, found " +
              std::to_string(parts.empty() ? 0 : parts.size() - 1),
          line_no);
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!parse_number(parts[d + 1], values[d])) {
        throw ParseError(
            "malformed number '" + std::string(parts[d + 1]) + "'", line_no);
      }
      if (!std::isfinite(values[d])) {
        throw ParseError("non-finite value", line_no);
      }
    }
    if (++rows > count) {
      throw ParseError(
          "more vectors than the header count " + std::to_string(count),
          line_no);
    }
    store.insert(std::string(parts[0]), values);
  }
  if (rows != count) {
    throw ParseError("header announces " + std::to_string(count) +
                         " vectors, found " + std::to_string(rows),
                     line_no);
  }
  return store;
}

WordVectorStore load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open word vectors: " + path.string());
  return parse_word_vectors(in);
}

std::vector<Neighbor> nearest_neighbors(const WordVectorStore& store,
                                        std::string_view word, std::size_t k,
                                        std::optional<double> min_similarity) {
  const std::string query = textops::nfc(word);
  const auto q = store.find(query);
  if (!q || k == 0) return {};
  const double qn = l2_norm(*q);
  const std::size_t dim = store.dim();

  std::vector<Neighbor> all;
  all.reserve(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.words()[i] == query) continue;
    const auto r = store.row(i);
    double score = 0.0;
    if (qn != 0.0 && store.norm(i) != 0.0) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += (*q)[d] * r[d];
      score = std::clamp(dot / (qn * store.norm(i)), -1.0, 1.0);
    }
    if (min_similarity && score < *min_similarity) continue;
    all.push_back({store.words()[i], score});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  };
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep),
                    all.end(), better);
  all.resize(keep);
  return all;
}

Vector SentenceEmbedder::embed_one(const std::string& text) {
  auto out = embed(std::span<const std::string>(&text, 1));
  return std::move(out.front());
}

MockEmbedder::MockEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim_ == 0) throw DomainError("embedding dimension must be positive");
}

Vector MockEmbedder::embed_text(std::string_view text) const {
  Vector v(dim_, 0.0);
  for (const std::string& token : textops::tokenize(text)) {
    const std::uint64_t h = stable_hash(token, seed_);
    const double sign = (h >> 63) != 0 ? -1.0 : 1.0;
    v[h % dim_] += sign;
  }
  normalize(v);
  return v;
}

std::vector<Vector> MockEmbedder::embed(std::span<const std::string> texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(embed_text(t));
  return out;
}

Vector mean_word_vector(const WordVectorStore& store,
                        const std::vector<std::string>& tokens) {
  Vector v(store.dim(), 0.0);
  std::size_t hits = 0;
  for (const std::string& token : tokens) {
    if (const auto row = store.find(token)) {
      for (std::size_t d = 0; d < v.size(); ++d) v[d] += (*row)[d];
      ++hits;
    }
  }
  if (hits > 0) {
    for (double& x : v) x /= static_cast<double>(hits);
    normalize(v);
  }
  return v;
}

}  // namespace bda::embeddings
