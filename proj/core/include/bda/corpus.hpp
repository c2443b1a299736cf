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

#ifndef BDA_CORPUS_HPP_
#define BDA_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace bda::corpus {

struct Document {
  std::string id;
  std::string text;
  std::string label;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class Format { kTsv, kCsv };

// Picks CSV for a ".csv" extension, TSV otherwise.
Format format_for(const std::filesystem::path& path);

// Immutable ordered collection of labeled documents. Construction enforces
// non-blank text and unique ids.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::vector<Document> documents);

  const std::vector<Document>& documents() const noexcept { return docs_; }
  const std::set<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }
  const Document& operator[](std::size_t i) const { return docs_[i]; }

  auto begin() const noexcept { return docs_.begin(); }
  auto end() const noexcept { return docs_.end(); }

  friend bool operator==(const LabeledDataset& a, const LabeledDataset& b) {
    return a.docs_ == b.docs_;
  }

 private:
  std::vector<Document> docs_;
  std::set<std::string> labels_;
};

// Header row must name `text` and `label`; `id` is optional and defaults to
// the zero-padded data-row index ("000000", "000001", ...). LF and CRLF line
// endings are accepted. CSV follows RFC 4180 quoting; TSV has no quoting.
LabeledDataset load_dataset(const std::filesystem::path& path, Format format);
LabeledDataset parse_dataset(std::istream& in, Format format);

// Writes an `id`, `text`, `label` header and LF line endings; loading the
// result and saving again reproduces the same bytes.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  Format format);
void write_dataset(const LabeledDataset& ds, std::ostream& out, Format format);

// Per-class document counts after clipping `class_sizes` (indexed in label
// order) to round(fraction * total) documents by largest-remainder
// apportionment. Remainder ties go to the earlier class. Every class keeps at
// least one document.
std::vector<std::size_t> apportion(const std::vector<std::size_t>& class_sizes,
                                   double fraction);

// Stratified subsample of `ds`. Per-class targets come from apportion() over
// classes in ascending label order; members are picked by a seeded shuffle
// and emitted in their original relative order. fraction = 1 returns `ds`
// unchanged.
LabeledDataset stratified_clip(const LabeledDataset& ds, double fraction,
                               std::uint64_t seed);

// Originals first, then `augmented`. Throws IntegrityError on id collision.
LabeledDataset merge(const LabeledDataset& original,
                     const LabeledDataset& augmented);

}  // namespace bda::corpus

#endif  // BDA_CORPUS_HPP_
