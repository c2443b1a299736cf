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

#ifndef BDA_PIPELINE_HPP_
#define BDA_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bda/augment.hpp"
#include "bda/backend.hpp"
#include "bda/corpus.hpp"
#include "bda/embeddings.hpp"
#include "bda/filter.hpp"
#include "bda/textops.hpp"

namespace bda::pipeline {

enum class OnExhaustion { kDrop, kKeepOriginalCopy };

struct PipelineConfig {
  augment::AugmentConfig augment;
  filter::FilterConfig filter;
  std::uint64_t seed = 0;
  int max_attempts = 4;
  int workers = 1;
  OnExhaustion on_exhaustion = OnExhaustion::kDrop;
  // Wall-clock timing makes audit logs differ between runs; when false the
  // elapsed column is written as 0.
  bool record_timing = false;

  void validate() const;
};

// Shared, read-only collaborators. `embedder` is always required, `store`
// whenever SR is enabled, `backend` whenever BT or PP is.
struct PipelineDeps {
  const embeddings::WordVectorStore* store = nullptr;
  const textops::StopwordSet* stop = nullptr;
  embeddings::SentenceEmbedder* embedder = nullptr;
  backend::ModelBackend* backend = nullptr;
};

struct AuditRecord {
  std::string source_id;
  int attempt = 0;
  augment::Method method = augment::Method::kSR;
  augment::Verdict verdict = augment::Verdict::kPending;
  std::optional<double> semantic;
  std::optional<double> lexical;
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct AugmentResult {
  corpus::LabeledDataset merged;
  std::vector<AuditRecord> audit;
};

// Runs one candidate generation with the given method. Backend failures
// surface as BackendError.
std::string generate(augment::Method method, const corpus::Document& doc,
                     const augment::AugmentConfig& cfg,
                     const PipelineDeps& deps, Rng& rng);

// 1:1 augmentation. Each document gets up to max_attempts attempts; attempt
// a draws its method and all of its randomness from
// derive_seed(seed, id, a). The first accepted candidate becomes
// "<id>#aug<a>" with the source label. Exhausted documents are dropped or,
// with kKeepOriginalCopy, duplicated as "<id>#copy". Output and audit do not
// depend on cfg.workers.
//
// Throws DomainError for a missing dependency and BackendError when BT/PP
// are enabled and the backend fails its health check.
AugmentResult augment_dataset(const corpus::LabeledDataset& ds,
                              const PipelineConfig& cfg,
                              const PipelineDeps& deps);

// Audit log: one tab-separated record per line, fields in AuditRecord order.
// Unset scores are written as "-".
void write_audit(const std::vector<AuditRecord>& records, std::ostream& out);
void save_audit(const std::vector<AuditRecord>& records,
                const std::filesystem::path& path);
// Throws ParseError with the offending line number.
std::vector<AuditRecord> parse_audit(std::istream& in);
std::vector<AuditRecord> load_audit(const std::filesystem::path& path);

struct QualityRow {
  augment::Method method = augment::Method::kSR;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t lexical_count = 0;
  std::size_t semantic_count = 0;
  // Percentages; unset when no record of the method had the score.
  std::optional<double> lexical_mean;
  std::optional<double> semantic_mean;
};

struct QualityReport {
  std::vector<QualityRow> rows;  // SR, RS, BT, PP order; absent methods omitted
};

QualityReport quality_report(const std::vector<AuditRecord>& records);

// "method  lexical  semantic  candidates  accepted" table with means to two
// decimals; "-" marks a mean with no evaluated records.
std::string format_quality_report(const QualityReport& report);

}  // namespace bda::pipeline

#endif  // BDA_PIPELINE_HPP_
