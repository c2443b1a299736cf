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

#ifndef BDA_EVALHARNESS_HPP_
#define BDA_EVALHARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bda/corpus.hpp"
#include "bda/embeddings.hpp"
#include "bda/pipeline.hpp"

// Feature-based classification benchmark: TF-IDF word/char n-gram features,
// optional mean word-vector features, a one-vs-rest linear SVM and macro-F1
// comparison of normal versus augmented training sets.
namespace bda::eval {

// Which feature families feed the classifier. Labels mirror the usual table
// rows: U, B, T for word 1/2/3-grams, C2..C5 for char n-grams, E for
// embeddings, joined with '+' ("U+B+C3+E").
struct FeatureSpec {
  std::set<int> word_orders;  // subset of {1, 2, 3}
  std::set<int> char_orders;  // subset of {2, 3, 4, 5}
  bool use_embeddings = false;

  void validate() const;
  std::string label() const;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// Case-insensitive "u+b+c2+e". Throws DomainError naming an unknown token.
FeatureSpec parse_feature_spec(std::string_view text);
// Comma-separated list of specs.
std::vector<FeatureSpec> parse_feature_specs(std::string_view list);
// The 22 SVM rows of the appendix ablation tables, U through
// U+B+T+C2+C3+C4+C5+E.
std::vector<FeatureSpec> default_feature_specs();

struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;  // ascending index

  std::vector<double> to_dense() const;
};

// Raw feature strings of `text` with multiplicity: word n-grams prefixed
// "w:", char n-grams prefixed "c:", orders ascending.
std::vector<std::string> extract_features(std::string_view text,
                                          const FeatureSpec& spec);

class Vectorizer {
 public:
  const FeatureSpec& spec() const noexcept { return spec_; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::span<const double> idf() const noexcept { return idf_; }
  std::size_t vocabulary_size() const noexcept { return terms_.size(); }
  std::size_t embed_dim() const noexcept { return embed_dim_; }
  std::size_t dim() const noexcept { return terms_.size() + embed_dim_; }
  std::optional<std::size_t> column(std::string_view feature) const;

 private:
  friend Vectorizer fit_vectorizer(const corpus::LabeledDataset&,
                                   const FeatureSpec&,
                                   const embeddings::WordVectorStore*);
  FeatureSpec spec_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> columns_;
  std::vector<double> idf_;
  std::size_t embed_dim_ = 0;
};

// Vocabulary = every feature seen in `train`, columns in first-occurrence
// order; idf(t) = ln((1 + N) / (1 + df(t))) + 1. `store` is required when
// spec.use_embeddings and ignored otherwise.
Vectorizer fit_vectorizer(const corpus::LabeledDataset& train,
                          const FeatureSpec& spec,
                          const embeddings::WordVectorStore* store);

// Raw-count tf times idf over in-vocabulary features, L2-normalized; the
// mean word-vector tail (when enabled) is normalized on its own and placed
// after the sparse block. Unknown features are ignored.
SparseVector vectorize(const Vectorizer& v, std::string_view text,
                       const embeddings::WordVectorStore* store);

struct TrainParams {
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 0;
};

// One weight vector and bias per label; labels in ascending order.
class LinearModel {
 public:
  LinearModel(std::vector<std::string> labels,
              std::vector<std::vector<double>> weights,
              std::vector<double> biases);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<double>>& weights() const noexcept {
    return weights_;
  }
  const std::vector<double>& biases() const noexcept { return biases_; }

  double score(std::size_t label_index, const SparseVector& x) const;
  // Highest-scoring label; ties go to the smallest label index.
  std::size_t predict_index(const SparseVector& x) const;
  const std::string& predict(const SparseVector& x) const {
    return labels_[predict_index(x)];
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> biases_;
};

// One-vs-rest L2-regularized hinge loss, trained by Pegasos stochastic
// subgradient steps of size 1 / (lambda * t) over seeded per-epoch
// shuffles. The bias is learned as the weight of a constant feature.
// Throws DomainError on size mismatch or fewer than two labels.
LinearModel train_classifier(std::span<const SparseVector> X,
                             std::span<const std::string> y,
                             const TrainParams& hp = {});

// Unweighted mean of per-class F1 over the classes present in `gold`.
double macro_f1(std::span<const std::string> gold,
                std::span<const std::string> pred);

// Fit on `train`, predict `test`, return macro-F1 in [0, 1].
double evaluate(const corpus::LabeledDataset& train,
                const corpus::LabeledDataset& test, const FeatureSpec& spec,
                const embeddings::WordVectorStore* store,
                const TrainParams& hp = {});

// Percent values rounded to two decimals; diff is taken between the rounded
// operands.
struct EvalRow {
  std::string feature_set;
  double clip = 1.0;
  double f1_normal = 0.0;
  double f1_augmented = 0.0;
  double diff = 0.0;
};

double round2(double x);
EvalRow make_row(std::string feature_set, double clip, double f1_normal,
                 double f1_augmented);

class EvalReport {
 public:
  const std::vector<EvalRow>& rows() const noexcept { return rows_; }
  // Rows from elsewhere (e.g. a fine-tuned transformer) may be appended for
  // side-by-side display.
  void append(EvalRow row) { rows_.push_back(std::move(row)); }

  std::string to_table() const;
  // Columns: feature_set,clip,f1_normal,f1_augmented,diff.
  std::string to_csv() const;
  static EvalReport from_csv(std::istream& in);

 private:
  std::vector<EvalRow> rows_;
};

// For every clip: T trains on stratified_clip(train, clip, pipe.seed), T'
// on augment_dataset() of that clip; both are scored on the same `test`.
// Rows are grouped by feature set, clips in the given order.
EvalReport ablate(const corpus::LabeledDataset& train,
                  const corpus::LabeledDataset& test,
                  std::span<const FeatureSpec> specs,
                  std::span<const double> clips,
                  const pipeline::PipelineConfig& pipe,
                  const pipeline::PipelineDeps& deps,
                  const TrainParams& hp = {});

}  // namespace bda::eval

#endif  // BDA_EVALHARNESS_HPP_
