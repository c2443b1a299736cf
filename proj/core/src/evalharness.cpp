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

#include "bda/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "bda/error.hpp"
#include "bda/random.hpp"
#include "bda/textops.hpp"

namespace bda::eval {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

// ----------------------------------------------------------------- FeatureSpec

void FeatureSpec::validate() const {
  for (int n : word_orders) {
    if (n < 1 || n > 3) throw DomainError("word n-gram order out of 1..3");
  }
  for (int n : char_orders) {
    if (n < 2 || n > 5) throw DomainError("char n-gram order out of 2..5");
  }
  if (word_orders.empty() && char_orders.empty() && !use_embeddings) {
    throw DomainError("feature spec selects no features");
  }
}

std::string FeatureSpec::label() const {
  static constexpr const char* kWord[] = {"", "U", "B", "T"};
  std::vector<std::string> parts;
  for (int n : word_orders) parts.emplace_back(kWord[n]);
  for (int n : char_orders) parts.push_back("C" + std::to_string(n));
  if (use_embeddings) parts.emplace_back("E");
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back('+');
    out += p;
  }
  return out;
}

FeatureSpec parse_feature_spec(std::string_view text) {
  FeatureSpec spec;
  for (std::string_view raw : split(text, '+')) {
    const std::string token = lower(trim(raw));
    if (token == "u") {
      spec.word_orders.insert(1);
    } else if (token == "b") {
      spec.word_orders.insert(2);
    } else if (token == "t") {
      spec.word_orders.insert(3);
    } else if (token == "e") {
      spec.use_embeddings = true;
    } else if (token.size() == 2 && token[0] == 'c' && token[1] >= '2' &&
               token[1] <= '5') {
      spec.char_orders.insert(token[1] - '0');
    } else {
      throw DomainError("unknown feature token: " +
                        std::string(trim(raw)));
    }
  }
  spec.validate();
  return spec;
}

std::vector<FeatureSpec> parse_feature_specs(std::string_view list) {
  std::vector<FeatureSpec> specs;
  for (std::string_view part : split(list, ',')) {
    if (trim(part).empty()) continue;
    specs.push_back(parse_feature_spec(part));
  }
  if (specs.empty()) throw DomainError("no feature specs given");
  return specs;
}

std::vector<FeatureSpec> default_feature_specs() {
  static constexpr const char* kRows[] = {
      "U",           "B",           "T",
      "U+B",         "B+T",         "U+B+T",
      "C2",          "C3",          "C4",
      "C5",          "C2+C3",       "C3+C4",
      "C4+C5",       "C2+C3+C4",    "C3+C4+C5",
      "C2+C3+C4+C5", "U+B+C3+C4+C5", "U+B+C2+C3+C4+C5",
      "U+B+T+C2+C3+C4+C5",          "E",
      "U+B+C2+C3+C4+C5+E",          "U+B+T+C2+C3+C4+C5+E",
  };
  std::vector<FeatureSpec> specs;
  for (const char* row : kRows) specs.push_back(parse_feature_spec(row));
  return specs;
}

// ------------------------------------------------------------------ Vectorizer

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim, 0.0);
  for (const auto& [i, x] : entries) out[i] = x;
  return out;
}

std::vector<std::string> extract_features(std::string_view text,
                                          const FeatureSpec& spec) {
  std::vector<std::string> features;
  if (!spec.word_orders.empty()) {
    const textops::TokenSequence tokens = textops::tokenize(text);
    for (int n : spec.word_orders) {
      for (std::string& g : textops::word_ngrams(tokens, n, n)) {
        features.push_back("w:" + g);
      }
    }
  }
  for (int n : spec.char_orders) {
    for (std::string& g : textops::char_ngrams(text, n, n)) {
      features.push_back("c:" + g);
    }
  }
  return features;
}

std::optional<std::size_t> Vectorizer::column(std::string_view feature) const {
  const auto it = columns_.find(std::string(feature));
  if (it == columns_.end()) return std::nullopt;
  return it->second;
}

Vectorizer fit_vectorizer(const corpus::LabeledDataset& train,
                          const FeatureSpec& spec,
                          const embeddings::WordVectorStore* store) {
  spec.validate();
  if (train.empty()) throw DomainError("cannot fit on an empty training set");
  if (spec.use_embeddings && store == nullptr) {
    throw DomainError("feature set " + spec.label() + " needs word vectors");
  }

  Vectorizer v;
  v.spec_ = spec;
  std::vector<std::size_t> df;
  std::vector<std::size_t> last_doc;
  for (std::size_t d = 0; d < train.size(); ++d) {
    for (std::string& f : extract_features(train[d].text, spec)) {
      auto [it, inserted] = v.columns_.try_emplace(f, v.terms_.size());
      if (inserted) {
        v.terms_.push_back(std::move(f));
        df.push_back(0);
        last_doc.push_back(train.size());
      }
      if (last_doc[it->second] != d) {
        last_doc[it->second] = d;
        ++df[it->second];
      }
    }
  }
  const auto n = static_cast<double>(train.size());
  v.idf_.resize(df.size());
  for (std::size_t i = 0; i < df.size(); ++i) {
    v.idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[i]))) + 1.0;
  }
  v.embed_dim_ = spec.use_embeddings ? store->dim() : 0;
  return v;
}

SparseVector vectorize(const Vectorizer& v, std::string_view text,
                       const embeddings::WordVectorStore* store) {
  SparseVector out;
  out.dim = v.dim();
  std::map<std::uint32_t, double> tf;
  for (const std::string& f : extract_features(text, v.spec())) {
    if (const auto col = v.column(f)) tf[static_cast<std::uint32_t>(*col)] += 1.0;
  }
  double norm = 0.0;
  for (auto& [col, x] : tf) {
    x *= v.idf()[col];
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (const auto& [col, x] : tf) {
    if (norm > 0.0) out.entries.emplace_back(col, x / norm);
  }
  if (v.embed_dim() > 0) {
    if (store == nullptr || store->dim() != v.embed_dim()) {
      throw DomainError("vectorize: word vectors missing or of wrong dim");
    }
    const auto tail =
        embeddings::mean_word_vector(*store, textops::tokenize(text));
    const auto base = static_cast<std::uint32_t>(v.vocabulary_size());
    for (std::size_t d = 0; d < tail.size(); ++d) {
      if (tail[d] != 0.0) {
        out.entries.emplace_back(base + static_cast<std::uint32_t>(d), tail[d]);
      }
    }
  }
  return out;
}

// ----------------------------------------------------------------- LinearModel

LinearModel::LinearModel(std::vector<std::string> labels,
                         std::vector<std::vector<double>> weights,
                         std::vector<double> biases)
    : labels_(std::move(labels)),
      weights_(std::move(weights)),
      biases_(std::move(biases)) {
  if (labels_.size() != weights_.size() || labels_.size() != biases_.size()) {
    throw DomainError("one weight vector and bias per label required");
  }
}

double LinearModel::score(std::size_t label_index, const SparseVector& x) const {
  const auto& w = weights_[label_index];
  double s = biases_[label_index];
  for (const auto& [i, value] : x.entries) {
    if (i < w.size()) s += w[i] * value;
  }
  return s;
}

std::size_t LinearModel::predict_index(const SparseVector& x) const {
  std::size_t best = 0;
  double best_score = score(0, x);
  for (std::size_t c = 1; c < labels_.size(); ++c) {
    const double s = score(c, x);
    if (s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

LinearModel train_classifier(std::span<const SparseVector> X,
                             std::span<const std::string> y,
                             const TrainParams& hp) {
  if (X.size() != y.size()) {
    throw DomainError("train_classifier: |X| != |y|");
  }
  if (!(hp.lambda > 0.0) || hp.epochs < 1) {
    throw DomainError("train_classifier: need lambda > 0 and epochs >= 1");
  }
  const std::set<std::string> label_set(y.begin(), y.end());
  if (label_set.size() < 2) {
    throw DomainError("train_classifier: need at least two distinct labels");
  }
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  std::size_t dim = 0;
  for (const SparseVector& x : X) dim = std::max(dim, x.dim);

  // Per-epoch visiting order, shared by every one-vs-rest problem.
  std::vector<std::vector<std::size_t>> orders(
      static_cast<std::size_t>(hp.epochs));
  for (std::size_t e = 0; e < orders.size(); ++e) {
    orders[e].resize(X.size());
    std::iota(orders[e].begin(), orders[e].end(), std::size_t{0});
    Rng rng(derive_seed(hp.seed, "pegasos-epoch", e));
    rng.shuffle(std::span<std::size_t>(orders[e]));
  }

  std::vector<std::vector<double>> weights;
  std::vector<double> biases;
  for (const std::string& label : labels) {
    // w = scale * v; the last slot of v holds the bias weight.
    std::vector<double> v(dim + 1, 0.0);
    double scale = 1.0;
    std::uint64_t t = 0;
    for (const auto& order : orders) {
      for (std::size_t i : order) {
        ++t;
        const double target = y[i] == label ? 1.0 : -1.0;
        double dot = v[dim];
        for (const auto& [j, value] : X[i].entries) dot += v[j] * value;
        const double margin = target * scale * dot;

        const double eta = 1.0 / (hp.lambda * static_cast<double>(t));
        const double decay = 1.0 - 1.0 / static_cast<double>(t);
        if (decay <= 0.0) {
          std::fill(v.begin(), v.end(), 0.0);
          scale = 1.0;
        } else {
          scale *= decay;
        }
        if (margin < 1.0) {
          const double step = eta * target / scale;
          for (const auto& [j, value] : X[i].entries) v[j] += step * value;
          v[dim] += step;
        }
        if (scale < 1e-9) {
          for (double& x : v) x *= scale;
          scale = 1.0;
        }
      }
    }
    for (double& x : v) x *= scale;
    biases.push_back(v[dim]);
    v.pop_back();
    weights.push_back(std::move(v));
  }
  return LinearModel(std::move(labels), std::move(weights), std::move(biases));
}

// ------------------------------------------------------------------- Metrics

double macro_f1(std::span<const std::string> gold,
                std::span<const std::string> pred) {
  if (gold.size() != pred.size()) {
    throw DomainError("macro_f1: gold and pred differ in length");
  }
  if (gold.empty()) throw DomainError("macro_f1: no predictions");
  const std::set<std::string> classes(gold.begin(), gold.end());
  double sum = 0.0;
  for (const std::string& c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i] == c;
      const bool p = pred[i] == c;
      if (g && p) ++tp;
      if (!g && p) ++fp;
      if (g && !p) ++fn;
    }
    const double precision =
        tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall =
        tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (precision + recall > 0.0) {
      sum += 2.0 * precision * recall / (precision + recall);
    }
  }
  return sum / static_cast<double>(classes.size());
}

double evaluate(const corpus::LabeledDataset& train,
                const corpus::LabeledDataset& test, const FeatureSpec& spec,
                const embeddings::WordVectorStore* store,
                const TrainParams& hp) {
  const Vectorizer vec = fit_vectorizer(train, spec, store);
  std::vector<SparseVector> X;
  std::vector<std::string> y;
  X.reserve(train.size());
  for (const auto& doc : train) {
    X.push_back(vectorize(vec, doc.text, store));
    y.push_back(doc.label);
  }
  const LinearModel model = train_classifier(X, y, hp);

  std::vector<std::string> gold;
  std::vector<std::string> pred;
  for (const auto& doc : test) {
    gold.push_back(doc.label);
    pred.push_back(model.predict(vectorize(vec, doc.text, store)));
  }
  return macro_f1(gold, pred);
}

// ------------------------------------------------------------------- Reports

double round2(double x) { return std::round(x * 100.0) / 100.0; }

EvalRow make_row(std::string feature_set, double clip, double f1_normal,
                 double f1_augmented) {
  EvalRow row;
  row.feature_set = std::move(feature_set);
  row.clip = clip;
  row.f1_normal = round2(100.0 * f1_normal);
  row.f1_augmented = round2(100.0 * f1_augmented);
  row.diff = round2(row.f1_augmented - row.f1_normal);
  return row;
}

std::string EvalReport::to_table() const {
  std::size_t width = std::string("feature_set").size();
  for (const auto& r : rows_) width = std::max(width, r.feature_set.size());
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s %6s %10s %12s %10s\n",
                static_cast<int>(width), "feature_set", "clip", "normal T%",
                "augmented T'%", "diff");
  out << buf;
  for (const auto& r : rows_) {
    char clip[16];
    std::snprintf(clip, sizeof clip, "%g%%", 100.0 * r.clip);
    std::snprintf(buf, sizeof buf, "%-*s %6s %10s %12s %10s\n",
                  static_cast<int>(width), r.feature_set.c_str(), clip,
                  percent(r.f1_normal).c_str(),
                  percent(r.f1_augmented).c_str(), percent(r.diff).c_str());
    out << buf;
  }
  return out.str();
}

std::string EvalReport::to_csv() const {
  std::ostringstream out;
  out << "feature_set,clip,f1_normal,f1_augmented,diff\n";
  for (const auto& r : rows_) {
    char clip[32];
    std::snprintf(clip, sizeof clip, "%g", r.clip);
    out << r.feature_set << ',' << clip << ',' << percent(r.f1_normal) << ','
        << percent(r.f1_augmented) << ',' << percent(r.diff) << '\n';
  }
  return out.str();
}

EvalReport EvalReport::from_csv(std::istream& in) {
  EvalReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("feature_set,")) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw ParseError("expected 5 report columns", line_no);
    EvalRow row;
    try {
      row.feature_set = std::string(f[0]);
      row.clip = std::stod(std::string(f[1]));
      row.f1_normal = std::stod(std::string(f[2]));
      row.f1_augmented = std::stod(std::string(f[3]));
      row.diff = std::stod(std::string(f[4]));
    } catch (const std::exception&) {
      throw ParseError("malformed report number", line_no);
    }
    report.append(std::move(row));
  }
  return report;
}

EvalReport ablate(const corpus::LabeledDataset& train,
                  const corpus::LabeledDataset& test,
                  std::span<const FeatureSpec> specs,
                  std::span<const double> clips,
                  const pipeline::PipelineConfig& pipe,
                  const pipeline::PipelineDeps& deps, const TrainParams& hp) {
  if (specs.empty() || clips.empty()) {
    throw DomainError("ablate needs at least one feature spec and one clip");
  }
  if (test.empty()) throw DomainError("ablate needs a non-empty test set");

  // cells[clip][spec] = (T, T')
  std::vector<std::vector<std::pair<double, double>>> cells(clips.size());
  for (std::size_t c = 0; c < clips.size(); ++c) {
    const corpus::LabeledDataset normal =
        corpus::stratified_clip(train, clips[c], pipe.seed);
    const corpus::LabeledDataset augmented =
        pipeline::augment_dataset(normal, pipe, deps).merged;
    for (const FeatureSpec& spec : specs) {
      const auto* store = spec.use_embeddings ? deps.store : nullptr;
      cells[c].emplace_back(evaluate(normal, test, spec, store, hp),
                            evaluate(augmented, test, spec, store, hp));
    }
  }

  EvalReport report;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t c = 0; c < clips.size(); ++c) {
      report.append(make_row(specs[s].label(), clips[c], cells[c][s].first,
                             cells[c][s].second));
    }
  }
  return report;
}

}  // namespace bda::eval
