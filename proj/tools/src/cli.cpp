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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "bda/augment.hpp"
#include "bda/backend.hpp"
#include "bda/corpus.hpp"
#include "bda/embeddings.hpp"
#include "bda/error.hpp"
#include "bda/evalharness.hpp"
#include "bda/filter.hpp"
#include "bda/pipeline.hpp"
#include "bda/textops.hpp"

namespace bda::cli {
namespace {

namespace fs = std::filesystem;

// Every knob any subcommand understands; each subcommand registers the
// subset it uses.
struct Options {
  std::string config;
  std::string train, test, out, audit, vectors, stopwords, backend;
  std::string methods, specs, clips = "0.15,0.5,1.0";
  std::string embedder = "mock";
  std::string on_exhaustion = "drop";
  std::string host = "127.0.0.1";
  int n = 2;
  int workers = 1;
  int max_attempts = 4;
  int epochs = 20;
  int port = 8000;
  int timeout_ms = 30000;
  std::size_t synonym_k = 5;
  std::size_t embed_dim = embeddings::MockEmbedder::kDefaultDim;
  std::uint64_t seed = 0;
  double semantic_low = 0.85;
  double semantic_high = 0.99;
  double lexical_max = 0.45;
  double scale_rate = 0.1;
  double fraction = 1.0;
  double lambda = 1e-4;
  bool length_scaled_n = false;
  bool timing = false;
  bool dry_run = false;
};

// ------------------------------------------------------------ option groups

void add_seed(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

void add_dry_run(CLI::App* sub, Options& o) {
  sub->add_flag("--dry-run", o.dry_run,
                "Validate configuration and connectivity, write nothing");
}

void add_backend(CLI::App* sub, Options& o) {
  sub->add_option("--backend", o.backend,
                  "Model backend endpoint, e.g. http://127.0.0.1:8000");
  sub->add_option("--timeout-ms", o.timeout_ms, "Backend request timeout")
      ->capture_default_str();
}

void add_augment_options(CLI::App* sub, Options& o) {
  sub->add_option("--methods", o.methods,
                  "Comma-separated subset of sr,rs,bt,pp (default: every "
                  "method whose resources are supplied)");
  sub->add_option("--n", o.n, "Alterations per SR/RS candidate")
      ->capture_default_str();
  sub->add_option("--synonym-k", o.synonym_k, "Synonym pool size for SR")
      ->capture_default_str();
  sub->add_flag("--length-scaled-n", o.length_scaled_n,
                "Use max(n, floor(scale-rate * tokens)) alterations");
  sub->add_option("--scale-rate", o.scale_rate)->capture_default_str();
  sub->add_option("--workers", o.workers)->capture_default_str();
  sub->add_option("--max-attempts", o.max_attempts)->capture_default_str();
  sub->add_option("--on-exhaustion", o.on_exhaustion)
      ->check(CLI::IsMember({"drop", "keep_original_copy"}))
      ->capture_default_str();
  sub->add_option("--semantic-low", o.semantic_low)->capture_default_str();
  sub->add_option("--semantic-high", o.semantic_high)->capture_default_str();
  sub->add_option("--lexical-max", o.lexical_max)->capture_default_str();
  sub->add_option("--vectors", o.vectors, "word2vec text-format vectors");
  sub->add_option("--stopwords", o.stopwords, "Newline-delimited stopwords");
  sub->add_option("--embedder", o.embedder,
                  "Sentence embedder for the semantic filter")
      ->check(CLI::IsMember({"mock", "service"}))
      ->capture_default_str();
  sub->add_option("--embed-dim", o.embed_dim, "Mock embedder dimension")
      ->capture_default_str();
  sub->add_flag("--timing", o.timing,
                "Record wall-clock time per attempt in the audit log");
  add_backend(sub, o);
  add_seed(sub, o);
}

// ------------------------------------------------------------------ helpers

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string(flag) + " is required");
}

void require_file(const std::string& path, const char* what) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw IoError(std::string(what) + " not found: " + path);
  }
}

std::vector<double> parse_clips(const std::string& list) {
  std::vector<double> clips;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed clip fraction: " + item);
    }
    if (item.find_first_not_of(' ', used) != std::string::npos) {
      throw DomainError("malformed clip fraction: " + item);
    }
    if (!(value > 0.0 && value <= 1.0)) {
      throw DomainError("clip fraction out of (0, 1]: " + item);
    }
    clips.push_back(value);
  }
  if (clips.empty()) throw DomainError("no clip fractions given");
  return clips;
}

// Loaded resources shared by augment and ablate.
struct Resources {
  std::optional<embeddings::WordVectorStore> store;
  std::optional<textops::StopwordSet> stop;
  std::unique_ptr<backend::HttpBackend> backend;
  std::unique_ptr<embeddings::SentenceEmbedder> embedder;

  pipeline::PipelineDeps deps() {
    pipeline::PipelineDeps d;
    d.store = store ? &*store : nullptr;
    d.stop = stop ? &*stop : nullptr;
    d.embedder = embedder.get();
    d.backend = backend.get();
    return d;
  }
};

pipeline::PipelineConfig pipeline_config(const Options& o) {
  pipeline::PipelineConfig cfg;
  cfg.augment.n = o.n;
  cfg.augment.synonym_k = o.synonym_k;
  cfg.augment.length_scaled_n = o.length_scaled_n;
  cfg.augment.scale_rate = o.scale_rate;
  if (!o.methods.empty()) {
    cfg.augment.methods = augment::parse_methods(o.methods);
  } else {
    cfg.augment.methods.clear();
    if (!o.vectors.empty()) cfg.augment.methods.push_back(augment::Method::kSR);
    cfg.augment.methods.push_back(augment::Method::kRS);
    if (!o.backend.empty()) {
      cfg.augment.methods.push_back(augment::Method::kBT);
      cfg.augment.methods.push_back(augment::Method::kPP);
    }
  }
  cfg.filter.semantic_low = o.semantic_low;
  cfg.filter.semantic_high = o.semantic_high;
  cfg.filter.lexical_max = o.lexical_max;
  cfg.seed = o.seed;
  cfg.max_attempts = o.max_attempts;
  cfg.workers = o.workers;
  cfg.on_exhaustion = o.on_exhaustion == "keep_original_copy"
                          ? pipeline::OnExhaustion::kKeepOriginalCopy
                          : pipeline::OnExhaustion::kDrop;
  cfg.record_timing = o.timing;
  cfg.validate();

  for (augment::Method m : cfg.augment.methods) {
    if (m == augment::Method::kSR && o.vectors.empty()) {
      throw DomainError("method sr needs --vectors");
    }
    if (augment::needs_backend(m) && o.backend.empty()) {
      throw DomainError("method " + std::string(augment::to_string(m)) +
                        " needs --backend");
    }
  }
  if (o.embedder == "service" && o.backend.empty()) {
    throw DomainError("--embedder service needs --backend");
  }
  return cfg;
}

Resources load_resources(const Options& o,
                         const pipeline::PipelineConfig& cfg) {
  require_file(o.vectors, "word vectors");
  require_file(o.stopwords, "stopword file");
  Resources r;
  if (!o.vectors.empty()) r.store = embeddings::load_word_vectors(o.vectors);
  if (!o.stopwords.empty()) r.stop = textops::StopwordSet::load(o.stopwords);
  if (!o.backend.empty()) {
    r.backend = std::make_unique<backend::HttpBackend>(
        o.backend, std::chrono::milliseconds(o.timeout_ms));
  }
  const bool needs_backend =
      o.embedder == "service" ||
      std::any_of(cfg.augment.methods.begin(), cfg.augment.methods.end(),
                  augment::needs_backend);
  if (needs_backend) {
    const backend::Health h = r.backend->health();
    if (h.status != "ok") {
      throw BackendError("backend reports status '" + h.status + "'");
    }
  }
  if (o.embedder == "service") {
    r.embedder = std::make_unique<backend::ServiceEmbedder>(*r.backend);
  } else {
    r.embedder =
        std::make_unique<embeddings::MockEmbedder>(o.embed_dim, o.seed);
  }
  return r;
}

corpus::LabeledDataset load_corpus(const std::string& path, const char* what) {
  require_file(path, what);
  return corpus::load_dataset(path, corpus::format_for(path));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

// ----------------------------------------------------------------- commands

int cmd_augment(const Options& o, std::ostream& out) {
  require(o.train, "--train");
  require(o.out, "--out");
  const pipeline::PipelineConfig cfg = pipeline_config(o);
  require_file(o.train, "training set");
  Resources res = load_resources(o, cfg);
  const corpus::LabeledDataset train = load_corpus(o.train, "training set");
  if (o.dry_run) {
    out << "dry run: " << train.size() << " documents, configuration OK\n";
    return kOk;
  }

  const pipeline::AugmentResult result =
      pipeline::augment_dataset(train, cfg, res.deps());
  corpus::save_dataset(result.merged, o.out, corpus::format_for(o.out));
  const std::string audit_path = o.audit.empty() ? o.out + ".audit" : o.audit;
  pipeline::save_audit(result.audit, audit_path);

  out << "documents " << train.size() << ", augmented "
      << result.merged.size() - train.size() << ", merged "
      << result.merged.size() << '\n';
  out << pipeline::format_quality_report(
      pipeline::quality_report(result.audit));
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  require(o.train, "--train");
  require(o.out, "--out");
  if (!(o.fraction > 0.0 && o.fraction <= 1.0)) {
    throw DomainError("--fraction must lie in (0, 1]");
  }
  const corpus::LabeledDataset train = load_corpus(o.train, "training set");
  const corpus::LabeledDataset clipped =
      corpus::stratified_clip(train, o.fraction, o.seed);
  if (o.dry_run) {
    out << "dry run: would write " << clipped.size() << " documents\n";
    return kOk;
  }
  corpus::save_dataset(clipped, o.out, corpus::format_for(o.out));
  out << "kept " << clipped.size() << " of " << train.size()
      << " documents\n";
  return kOk;
}

std::vector<eval::FeatureSpec> resolve_specs(const Options& o,
                                             std::ostream& err) {
  if (!o.specs.empty()) return eval::parse_feature_specs(o.specs);
  std::vector<eval::FeatureSpec> specs = eval::default_feature_specs();
  if (o.vectors.empty()) {
    std::erase_if(specs, [](const auto& s) { return s.use_embeddings; });
    err << "note: no --vectors given; skipping embedding (E) feature sets\n";
  }
  return specs;
}

void check_spec_resources(const std::vector<eval::FeatureSpec>& specs,
                          const Options& o) {
  for (const auto& s : specs) {
    if (s.use_embeddings && o.vectors.empty()) {
      throw DomainError("feature set " + s.label() + " needs --vectors");
    }
  }
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.train, "--train");
  require(o.test, "--test");
  const auto specs = resolve_specs(o, err);
  check_spec_resources(specs, o);
  require_file(o.vectors, "word vectors");
  const corpus::LabeledDataset train = load_corpus(o.train, "training set");
  const corpus::LabeledDataset test = load_corpus(o.test, "test set");
  std::optional<embeddings::WordVectorStore> store;
  if (!o.vectors.empty()) store = embeddings::load_word_vectors(o.vectors);
  if (o.dry_run) {
    out << "dry run: configuration OK\n";
    return kOk;
  }
  eval::TrainParams hp{o.lambda, o.epochs, o.seed};
  for (const auto& spec : specs) {
    const double f1 = eval::evaluate(
        train, test, spec, spec.use_embeddings ? &*store : nullptr, hp);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", eval::round2(100.0 * f1));
    out << spec.label() << '\t' << buf << '\n';
  }
  return kOk;
}

int cmd_ablate(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.train, "--train");
  require(o.test, "--test");
  const auto specs = resolve_specs(o, err);
  check_spec_resources(specs, o);
  const std::vector<double> clips = parse_clips(o.clips);
  const pipeline::PipelineConfig cfg = pipeline_config(o);
  require_file(o.train, "training set");
  require_file(o.test, "test set");
  Resources res = load_resources(o, cfg);
  const corpus::LabeledDataset train = load_corpus(o.train, "training set");
  const corpus::LabeledDataset test = load_corpus(o.test, "test set");
  if (o.dry_run) {
    out << "dry run: " << specs.size() * clips.size()
        << " report rows, configuration OK\n";
    return kOk;
  }
  const eval::EvalReport report =
      eval::ablate(train, test, specs, clips, cfg, res.deps(),
                   eval::TrainParams{o.lambda, o.epochs, o.seed});
  out << report.to_table();
  if (!o.out.empty()) write_text(o.out, report.to_csv());
  return kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  require(o.audit, "--audit");
  require_file(o.audit, "audit log");
  const auto records = pipeline::load_audit(o.audit);
  out << pipeline::format_quality_report(pipeline::quality_report(records));
  return kOk;
}

int cmd_health(const Options& o, std::ostream& out) {
  require(o.backend, "--backend");
  backend::HttpBackend client(o.backend,
                              std::chrono::milliseconds(o.timeout_ms));
  const backend::Health h = client.health();
  out << "status " << h.status << " dim " << h.dim << '\n';
  return h.status == "ok" ? kOk : kBackendError;
}

int cmd_serve_mock(const Options& o, std::ostream& out) {
  backend::MockServer server(o.embed_dim, o.seed);
  out << "mock backend listening on " << o.host << ':' << o.port << std::endl;
  server.listen(o.host, o.port);
  return kOk;
}

// ------------------------------------------------------------ config file

// Flat "key = value" lines, '#' comments. Keys are long flag names without
// the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config file not found: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return entries;
}

bool given_on_command_line(const std::vector<std::string>& args,
                           const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.starts_with(flag + "=");
  });
}

// Inserts config-file values for options not already on the command line.
std::vector<std::string> apply_config(CLI::App& app,
                                      const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  if (rest.empty()) throw DomainError("--config needs a subcommand");

  CLI::App* sub = app.get_subcommand_no_throw(rest.front());
  if (sub == nullptr) throw DomainError("unknown subcommand: " + rest.front());

  std::vector<std::string> merged{rest.front()};
  for (const auto& [key, value] : read_config(path)) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr) {
      throw DomainError("unknown config key '" + key + "' for " +
                        rest.front());
    }
    if (given_on_command_line(rest, flag)) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") merged.push_back(flag);
    } else {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  merged.insert(merged.end(), rest.begin() + 1, rest.end());
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Text data augmentation with semantic/lexical filtering"};
  app.name("bda");
  app.require_subcommand(1);
  app.add_option("--config", o.config,
                 "key = value file; command-line flags take precedence");

  auto* augment_cmd =
      app.add_subcommand("augment", "Augment a dataset 1:1 and filter it");
  augment_cmd->add_option("--train", o.train, "Input dataset (.tsv/.csv)");
  augment_cmd->add_option("--out", o.out, "Merged output dataset");
  augment_cmd->add_option("--audit", o.audit,
                          "Audit log path (default: <out>.audit)");
  add_augment_options(augment_cmd, o);
  add_dry_run(augment_cmd, o);

  auto* sample_cmd =
      app.add_subcommand("sample", "Stratified clip of a dataset");
  sample_cmd->add_option("--train", o.train);
  sample_cmd->add_option("--out", o.out);
  sample_cmd->add_option("--fraction", o.fraction, "Fraction in (0, 1]")
      ->capture_default_str();
  add_seed(sample_cmd, o);
  add_dry_run(sample_cmd, o);

  auto* eval_cmd = app.add_subcommand(
      "eval", "Train on --train, report macro-F1 on --test per feature set");
  eval_cmd->add_option("--train", o.train);
  eval_cmd->add_option("--test", o.test);
  eval_cmd->add_option("--specs", o.specs, "Comma-separated, e.g. u,u+b,c3");
  eval_cmd->add_option("--vectors", o.vectors);
  eval_cmd->add_option("--lambda", o.lambda)->capture_default_str();
  eval_cmd->add_option("--epochs", o.epochs)->capture_default_str();
  add_seed(eval_cmd, o);
  add_dry_run(eval_cmd, o);

  auto* ablate_cmd = app.add_subcommand(
      "ablate", "Normal vs augmented macro-F1 across feature sets and clips");
  ablate_cmd->add_option("--train", o.train);
  ablate_cmd->add_option("--test", o.test);
  ablate_cmd->add_option("--out", o.out, "Write the report as CSV");
  ablate_cmd->add_option("--specs", o.specs);
  ablate_cmd->add_option("--clips", o.clips)->capture_default_str();
  ablate_cmd->add_option("--lambda", o.lambda)->capture_default_str();
  ablate_cmd->add_option("--epochs", o.epochs)->capture_default_str();
  add_augment_options(ablate_cmd, o);
  add_dry_run(ablate_cmd, o);

  auto* report_cmd = app.add_subcommand(
      "report", "Per-method lexical/semantic similarity from an audit log");
  report_cmd->add_option("--audit", o.audit);

  auto* health_cmd =
      app.add_subcommand("health", "Check that a model backend responds");
  add_backend(health_cmd, o);

  auto* serve_cmd = app.add_subcommand(
      "serve-mock", "Serve the deterministic mock model backend over HTTP");
  serve_cmd->add_option("--host", o.host)->capture_default_str();
  serve_cmd->add_option("--port", o.port)->capture_default_str();
  serve_cmd->add_option("--embed-dim", o.embed_dim)->capture_default_str();
  add_seed(serve_cmd, o);

  try {
    std::vector<std::string> argv = apply_config(app, args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*augment_cmd) return cmd_augment(o, out);
    if (*sample_cmd) return cmd_sample(o, out);
    if (*eval_cmd) return cmd_eval(o, out, err);
    if (*ablate_cmd) return cmd_ablate(o, out, err);
    if (*report_cmd) return cmd_report(o, out);
    if (*health_cmd) return cmd_health(o, out);
    if (*serve_cmd) return cmd_serve_mock(o, out);
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << '\n';
    return kBackendError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    // IoError, FormatError, ParseError, IntegrityError.
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
  return kConfigError;
}

}  // namespace bda::cli
