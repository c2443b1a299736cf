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

#ifndef BDA_EMBEDDINGS_HPP_
#define BDA_EMBEDDINGS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bda::embeddings {

using Vector = std::vector<double>;

// u.v / (|u| |v|), clamped to [-1, 1]; 0 when either norm is 0. Throws
// DomainError on a dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

double l2_norm(std::span<const double> v);

// In-place L2 normalization; zero vectors are left untouched.
void normalize(std::span<double> v);

struct Neighbor {
  std::string word;
  double score;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Word -> dense vector map. Keys are stored NFC-normalized and every vector
// has exactly dim() finite components.
class WordVectorStore {
 public:
  WordVectorStore() = default;
  // Later duplicates of a word replace earlier ones and are counted.
  WordVectorStore(std::size_t dim,
                  std::vector<std::pair<std::string, Vector>> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  std::size_t duplicates() const noexcept { return duplicates_; }

  bool contains(std::string_view word) const;
  // nullopt for out-of-vocabulary words.
  std::optional<std::span<const double>> find(std::string_view word) const;

  const std::vector<std::string>& words() const noexcept { return words_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double norm(std::size_t i) const { return norms_[i]; }

 private:
  friend WordVectorStore parse_word_vectors(std::istream& in);
  void insert(std::string word, std::span<const double> values);

  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_ = 0;
};

// word2vec text format: "<count> <dim>" then `count` lines of a word
// followed by `dim` decimal reals.
WordVectorStore load_word_vectors(const std::filesystem::path& path);
WordVectorStore parse_word_vectors(std::istream& in);

// Exhaustive top-k by cosine, excluding `word` itself. Ties are broken by
// ascending word. Empty when `word` is out of vocabulary. Entries scoring
// below `min_similarity` (when given) are dropped.
std::vector<Neighbor> nearest_neighbors(
    const WordVectorStore& store, std::string_view word, std::size_t k,
    std::optional<double> min_similarity = std::nullopt);

enum class EmbedderKind { kMock, kService };

// Sentence embedding provider used by the semantic filter. Implementations
// are deterministic per instance and safe to call concurrently.
class SentenceEmbedder {
 public:
  virtual ~SentenceEmbedder() = default;
  virtual std::size_t dim() const = 0;
  virtual EmbedderKind kind() const = 0;
  virtual std::vector<Vector> embed(std::span<const std::string> texts) = 0;

  Vector embed_one(const std::string& text);
};

// Signed feature hashing of tokens into `dim` buckets followed by L2
// normalization. Token order is ignored, so any permutation of a text maps
// to the same vector. Texts without tokens map to the zero vector.
class MockEmbedder final : public SentenceEmbedder {
 public:
  static constexpr std::size_t kDefaultDim = 256;

  explicit MockEmbedder(std::size_t dim = kDefaultDim, std::uint64_t seed = 0);

  std::size_t dim() const override { return dim_; }
  EmbedderKind kind() const override { return EmbedderKind::kMock; }
  std::vector<Vector> embed(std::span<const std::string> texts) override;

  Vector embed_text(std::string_view text) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Mean of the vectors of in-store tokens, L2-normalized; zero vector when no
// token is in the store.
Vector mean_word_vector(const WordVectorStore& store,
                        const std::vector<std::string>& tokens);

}  // namespace bda::embeddings

#endif  // BDA_EMBEDDINGS_HPP_
