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

#include "bda/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "bda/error.hpp"

namespace bda::pipeline {
namespace {

using augment::Method;
using augment::Verdict;

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::optional<double> parse_score(const std::string& field, std::size_t line) {
  if (field == "-") return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("malformed score '" + field + "'", line);
  }
  return value;
}

// Outcome of one source document.
struct DocOutcome {
  std::vector<AuditRecord> audit;
  std::optional<corpus::Document> augmented;
};

DocOutcome process_document(const corpus::Document& doc,
                            const PipelineConfig& cfg,
                            const PipelineDeps& deps) {
  using Clock = std::chrono::steady_clock;
  DocOutcome out;
  const auto& methods = cfg.augment.methods;
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const auto started = Clock::now();
    Rng rng(derive_seed(cfg.seed, doc.id, static_cast<std::uint64_t>(attempt)));
    augment::Candidate cand;
    cand.source_id = doc.id;
    cand.method = methods[static_cast<std::size_t>(rng.below(methods.size()))];
    cand.original = doc.text;
    try {
      cand.augmented = generate(cand.method, doc, cfg.augment, deps, rng);
      cand = filter::apply_filter(cand, cfg.filter, *deps.embedder);
    } catch (const BackendError&) {
      cand.semantic.reset();
      cand.lexical.reset();
      cand.verdict = Verdict::kRejectedBackendError;
    }

    AuditRecord rec;
    rec.source_id = doc.id;
    rec.attempt = attempt;
    rec.method = cand.method;
    rec.verdict = cand.verdict;
    rec.semantic = cand.semantic;
    rec.lexical = cand.lexical;
    if (cfg.record_timing) {
      rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           Clock::now() - started)
                           .count();
    }
    out.audit.push_back(std::move(rec));

    if (cand.verdict == Verdict::kAccepted) {
      out.augmented = corpus::Document{
          doc.id + "#aug" + std::to_string(attempt), cand.augmented, doc.label};
      return out;
    }
  }
  if (cfg.on_exhaustion == OnExhaustion::kKeepOriginalCopy) {
    out.augmented = corpus::Document{doc.id + "#copy", doc.text, doc.label};
  }
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  augment.validate();
  filter.validate();
  if (max_attempts < 1) throw DomainError("max_attempts must be >= 1");
  if (workers < 1) throw DomainError("workers must be >= 1");
}

std::string generate(Method method, const corpus::Document& doc,
                     const augment::AugmentConfig& cfg,
                     const PipelineDeps& deps, Rng& rng) {
  static const textops::StopwordSet kNoStopwords;
  switch (method) {
    case Method::kSR:
      if (deps.store == nullptr) {
        throw DomainError("synonym replacement needs word vectors");
      }
      return augment::synonym_replacement(
          doc.text, cfg, *deps.store,
          deps.stop != nullptr ? *deps.stop : kNoStopwords, rng);
    case Method::kRS:
      return augment::random_swap(doc.text, cfg, rng);
    case Method::kBT:
      if (deps.backend == nullptr) throw DomainError("BT needs a backend");
      return augment::back_translate(doc.text, *deps.backend, cfg);
    case Method::kPP:
      if (deps.backend == nullptr) throw DomainError("PP needs a backend");
      return augment::paraphrase(doc.text, *deps.backend);
  }
  throw DomainError("unknown method");
}

AugmentResult augment_dataset(const corpus::LabeledDataset& ds,
                              const PipelineConfig& cfg,
                              const PipelineDeps& deps) {
  cfg.validate();
  if (deps.embedder == nullptr) {
    throw DomainError("the filter needs a sentence embedder");
  }
  bool wants_backend = false;
  for (Method m : cfg.augment.methods) {
    if (m == Method::kSR && deps.store == nullptr) {
      throw DomainError("method SR requires word vectors");
    }
    wants_backend = wants_backend || augment::needs_backend(m);
  }
  if (wants_backend) {
    if (deps.backend == nullptr) {
      throw DomainError("methods BT/PP require a model backend");
    }
    const backend::Health h = deps.backend->health();
    if (h.status != "ok") {
      throw BackendError("backend health status is '" + h.status + "'");
    }
  }

  std::vector<DocOutcome> outcomes(ds.size());
  std::vector<std::exception_ptr> errors(ds.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      try {
        outcomes[i] = process_document(ds[i], cfg, deps);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(ds.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  AugmentResult result;
  std::vector<corpus::Document> extra;
  for (DocOutcome& o : outcomes) {
    result.audit.insert(result.audit.end(),
                        std::make_move_iterator(o.audit.begin()),
                        std::make_move_iterator(o.audit.end()));
    if (o.augmented) extra.push_back(std::move(*o.augmented));
  }
  result.merged =
      corpus::merge(ds, corpus::LabeledDataset(std::move(extra)));
  return result;
}

void write_audit(const std::vector<AuditRecord>& records, std::ostream& out) {
  for (const AuditRecord& r : records) {
    if (r.source_id.find_first_of("\t\r\n") != std::string::npos) {
      throw FormatError("source id contains a tab or line break: " +
                        r.source_id);
    }
    out << r.source_id << '\t' << r.attempt << '\t'
        << augment::to_string(r.method) << '\t'
        << augment::to_string(r.verdict) << '\t'
        << (r.semantic ? format_double(*r.semantic) : "-") << '\t'
        << (r.lexical ? format_double(*r.lexical) : "-") << '\t'
        << r.elapsed_ms << '\n';
  }
}

void save_audit(const std::vector<AuditRecord>& records,
                const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_audit(records, buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write audit log: " + path.string());
  out << buffer.str();
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<AuditRecord> parse_audit(std::istream& in) {
  std::vector<AuditRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 7) {
      throw ParseError("expected 7 fields, found " + std::to_string(f.size()),
                       line_no);
    }
    AuditRecord r;
    r.source_id = f[0];
    try {
      std::size_t used = 0;
      r.attempt = std::stoi(f[1], &used);
      if (used != f[1].size() || r.attempt < 0) throw DomainError("attempt");
      r.method = augment::parse_method(f[2]);
      r.verdict = augment::parse_verdict(f[3]);
      r.elapsed_ms = std::stoll(f[6], &used);
      if (used != f[6].size()) throw DomainError("elapsed");
    } catch (const std::exception& e) {
      throw ParseError(std::string("malformed audit record: ") + e.what(),
                       line_no);
    }
    r.semantic = parse_score(f[4], line_no);
    r.lexical = parse_score(f[5], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AuditRecord> load_audit(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open audit log: " + path.string());
  return parse_audit(in);
}

QualityReport quality_report(const std::vector<AuditRecord>& records) {
  QualityReport report;
  for (Method m : augment::kAllMethods) {
    QualityRow row;
    row.method = m;
    double lexical_sum = 0.0;
    double semantic_sum = 0.0;
    for (const AuditRecord& r : records) {
      if (r.method != m) continue;
      ++row.candidates;
      if (r.verdict == Verdict::kAccepted) ++row.accepted;
      if (r.lexical) {
        lexical_sum += *r.lexical;
        ++row.lexical_count;
      }
      if (r.semantic) {
        semantic_sum += *r.semantic;
        ++row.semantic_count;
      }
    }
    if (row.candidates == 0) continue;
    if (row.lexical_count > 0) {
      row.lexical_mean =
          100.0 * lexical_sum / static_cast<double>(row.lexical_count);
    }
    if (row.semantic_count > 0) {
      row.semantic_mean =
          100.0 * semantic_sum / static_cast<double>(row.semantic_count);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string format_quality_report(const QualityReport& report) {
  const auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return std::string(buf);
  };
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %9s %9s %11s %9s\n", "method",
                "lexical", "semantic", "candidates", "accepted");
  out << line;
  for (const QualityRow& row : report.rows) {
    std::snprintf(line, sizeof line, "%-8s %9s %9s %11zu %9zu\n",
                  std::string(augment::to_string(row.method)).c_str(),
                  cell(row.lexical_mean).c_str(),
                  cell(row.semantic_mean).c_str(), row.candidates,
                  row.accepted);
    out << line;
  }
  return out.str();
}

}  // namespace bda::pipeline
