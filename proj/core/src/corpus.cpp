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

#include "bda/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "bda/error.hpp"
#include "bda/random.hpp"
#include "bda/textops.hpp"

namespace bda::corpus {
namespace {

using Record = std::vector<std::string>;

// Splits the whole stream into records. Returns (record, 1-based row number).
std::vector<std::pair<Record, std::size_t>> read_records(std::istream& in,
                                                         Format format) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();

  std::vector<std::pair<Record, std::size_t>> records;
  std::size_t row = 0;
  std::size_t i = 0;
  const std::size_t n = data.size();

  while (i < n) {
    const std::size_t start = ++row;
    Record record;
    std::string field;
    bool end_of_record = false;

    if (format == Format::kTsv) {
      while (i < n && !end_of_record) {
        const char c = data[i++];
        if (c == '\t') {
          record.push_back(std::move(field));
          field.clear();
        } else if (c == '\n') {
          end_of_record = true;
        } else if (c == '\r' && i < n && data[i] == '\n') {
          ++i;
          end_of_record = true;
        } else {
          field.push_back(c);
        }
      }
      record.push_back(std::move(field));
    } else {
      bool field_started = false;
      while (i < n && !end_of_record) {
        const char c = data[i];
        if (c == '"' && !field_started) {
          // Quoted field: runs to the closing quote; "" is a literal quote.
          ++i;
          bool closed = false;
          while (i < n) {
            if (data[i] == '"') {
              if (i + 1 < n && data[i + 1] == '"') {
                field.push_back('"');
                i += 2;
              } else {
                ++i;
                closed = true;
                break;
              }
            } else {
              if (data[i] == '\n') ++row;
              field.push_back(data[i++]);
            }
          }
          if (!closed) throw ParseError("unterminated quoted field", start);
          if (i < n && data[i] != ',' && data[i] != '\n' &&
              !(data[i] == '\r' && i + 1 < n && data[i + 1] == '\n')) {
            throw ParseError("unexpected character after closing quote", row);
          }
          field_started = true;
          continue;
        }
        ++i;
        if (c == ',') {
          record.push_back(std::move(field));
          field.clear();
          field_started = false;
        } else if (c == '\n') {
          end_of_record = true;
        } else if (c == '\r' && i < n && data[i] == '\n') {
          ++i;
          end_of_record = true;
        } else if (c == '"') {
          throw ParseError("quote inside unquoted field", row);
        } else {
          field.push_back(c);
          field_started = true;
        }
      }
      record.push_back(std::move(field));
    }

    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) records.emplace_back(std::move(record), start);
  }
  return records;
}

std::string padded_index(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", i);
  return buf;
}

void write_field(std::ostream& out, const std::string& field, Format format) {
  if (format == Format::kTsv) {
    if (field.find_first_of("\t\r\n") != std::string::npos) {
      throw FormatError("TSV field contains a tab or line break: " + field);
    }
    out << field;
    return;
  }
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

Format format_for(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? Format::kCsv : Format::kTsv;
}

LabeledDataset::LabeledDataset(std::vector<Document> documents)
    : docs_(std::move(documents)) {
  std::unordered_set<std::string> seen;
  seen.reserve(docs_.size());
  for (const Document& doc : docs_) {
    if (textops::is_blank(doc.text)) {
      throw FormatError("document '" + doc.id + "' has empty text");
    }
    if (!seen.insert(doc.id).second) {
      throw IntegrityError("duplicate document id: " + doc.id);
    }
    labels_.insert(doc.label);
  }
}

LabeledDataset parse_dataset(std::istream& in, Format format) {
  const auto records = read_records(in, format);
  if (records.empty()) throw FormatError("missing header row");

  const Record& header = records.front().first;
  std::optional<std::size_t> id_col, text_col, label_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name = header[c];
    if (c == 0 && name.starts_with("\xEF\xBB\xBF")) name.erase(0, 3);
    if (name == "id") id_col = c;
    if (name == "text") text_col = c;
    if (name == "label") label_col = c;
  }
  if (!text_col) throw FormatError("missing column: text");
  if (!label_col) throw FormatError("missing column: label");

  std::vector<Document> docs;
  docs.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [record, row] = records[r];
    if (record.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(record.size()),
                       row);
    }
    Document doc;
    doc.id = id_col ? record[*id_col] : padded_index(r - 1);
    doc.text = record[*text_col];
    doc.label = record[*label_col];
    if (textops::is_blank(doc.text)) {
      throw ParseError("empty text", row);
    }
    docs.push_back(std::move(doc));
  }
  return LabeledDataset(std::move(docs));
}

LabeledDataset load_dataset(const std::filesystem::path& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset: " + path.string());
  return parse_dataset(in, format);
}

void write_dataset(const LabeledDataset& ds, std::ostream& out,
                   Format format) {
  const char sep = format == Format::kTsv ? '\t' : ',';
  out << "id" << sep << "text" << sep << "label" << '\n';
  for (const Document& doc : ds) {
    write_field(out, doc.id, format);
    out << sep;
    write_field(out, doc.text, format);
    out << sep;
    write_field(out, doc.label, format);
    out << '\n';
  }
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path,
                  Format format) {
  std::ostringstream buffer;
  write_dataset(ds, buffer, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write dataset: " + path.string());
  out << buffer.str();
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::size_t> apportion(const std::vector<std::size_t>& class_sizes,
                                   double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("clip fraction must lie in (0, 1], got " +
                      std::to_string(fraction));
  }
  std::size_t total_docs = 0;
  for (std::size_t size : class_sizes) {
    if (size == 0) throw DomainError("every class needs at least one document");
    total_docs += size;
  }
  if (total_docs == 0) return {};

  const auto target = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(total_docs)));

  // Quotas target * size / total in exact integer arithmetic: floor plus a
  // remainder numerator over the common denominator total_docs.
  std::vector<std::size_t> counts(class_sizes.size());
  std::vector<std::size_t> remainders(class_sizes.size());
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    const std::size_t scaled = target * class_sizes[c];
    counts[c] = scaled / total_docs;
    remainders[c] = scaled % total_docs;
    assigned += counts[c];
  }

  std::vector<std::size_t> order(class_sizes.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return remainders[a] > remainders[b];
                   });
  for (std::size_t k = 0; assigned < target && k < order.size(); ++k) {
    ++counts[order[k]];
    ++assigned;
  }

  for (std::size_t& count : counts) count = std::max<std::size_t>(count, 1);
  return counts;
}

LabeledDataset stratified_clip(const LabeledDataset& ds, double fraction,
                               std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("clip fraction must lie in (0, 1], got " +
                      std::to_string(fraction));
  }
  // labels() is already sorted ascending.
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    members[ds[i].label].push_back(i);
  }
  std::vector<std::size_t> sizes;
  sizes.reserve(members.size());
  for (const auto& [label, idx] : members) sizes.push_back(idx.size());
  const std::vector<std::size_t> counts = apportion(sizes, fraction);

  std::vector<std::size_t> keep;
  std::size_t c = 0;
  for (auto& [label, idx] : members) {
    Rng rng(derive_seed(seed, label));
    std::vector<std::size_t> pool = idx;
    rng.shuffle(std::span<std::size_t>(pool));
    keep.insert(keep.end(), pool.begin(),
                pool.begin() + static_cast<std::ptrdiff_t>(counts[c]));
    ++c;
  }
  std::sort(keep.begin(), keep.end());

  std::vector<Document> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(ds[i]);
  return LabeledDataset(std::move(out));
}

LabeledDataset merge(const LabeledDataset& original,
                     const LabeledDataset& augmented) {
  std::vector<Document> docs;
  docs.reserve(original.size() + augmented.size());
  docs.insert(docs.end(), original.begin(), original.end());
  docs.insert(docs.end(), augmented.begin(), augmented.end());
  return LabeledDataset(std::move(docs));
}

}  // namespace bda::corpus
