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

#ifndef BDA_BACKEND_HPP_
#define BDA_BACKEND_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bda/embeddings.hpp"

// Client side of the model-backend wire protocol plus a mock that honors the
// same contract, in-process and over HTTP.
//
//   POST /translate  {"text", "src", "tgt"} -> {"text"}
//   POST /paraphrase {"text"}               -> {"text"}
//   POST /embed      {"texts": [...]}       -> {"dim", "vectors": [[...]]}
//   GET  /health                            -> {"status": "ok", "dim"}
//
// Errors: 400 empty text, src == tgt, empty batch or malformed body;
// 413 batch larger than kMaxEmbedBatch; 503 model not loaded; 504 timeout.
namespace bda::backend {

inline constexpr std::size_t kMaxEmbedBatch = 256;

struct Health {
  std::string status;
  std::size_t dim = 0;
};

// All calls throw BackendError on transport failures, non-200 statuses and
// empty payloads. Implementations must tolerate concurrent calls.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual std::string translate(const std::string& text,
                                const std::string& src,
                                const std::string& tgt) = 0;
  virtual std::string paraphrase(const std::string& text) = 0;
  virtual std::vector<embeddings::Vector> embed(
      std::span<const std::string> texts) = 0;
  virtual Health health() = 0;
};

// Deterministic stand-in for the real models:
//   translate  rotates the token sequence right by one ("a b c" -> "c a b"),
//   paraphrase reverses it ("a b c" -> "c b a"),
//   embed      delegates to MockEmbedder.
class MockBackend final : public ModelBackend {
 public:
  explicit MockBackend(std::size_t dim = embeddings::MockEmbedder::kDefaultDim,
                       std::uint64_t seed = 0);

  std::string translate(const std::string& text, const std::string& src,
                        const std::string& tgt) override;
  std::string paraphrase(const std::string& text) override;
  std::vector<embeddings::Vector> embed(
      std::span<const std::string> texts) override;
  Health health() override;

 private:
  embeddings::MockEmbedder embedder_;
};

// HTTP client for an endpoint such as "http://127.0.0.1:8000". A fresh
// connection is opened per call, so one instance may be shared by threads.
class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(std::string endpoint,
                       std::chrono::milliseconds timeout =
                           std::chrono::milliseconds(30000));

  std::string translate(const std::string& text, const std::string& src,
                        const std::string& tgt) override;
  std::string paraphrase(const std::string& text) override;
  std::vector<embeddings::Vector> embed(
      std::span<const std::string> texts) override;
  Health health() override;

  const std::string& endpoint() const noexcept { return endpoint_; }

 private:
  std::string post(const std::string& path, const std::string& body);

  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

// Serves a MockBackend over the wire protocol on a background thread.
class MockServer {
 public:
  explicit MockServer(std::size_t dim = embeddings::MockEmbedder::kDefaultDim,
                      std::uint64_t seed = 0);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  // Binds `host:port` (port 0 picks a free port) and starts serving.
  // Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks the calling thread until stop() is called from elsewhere.
  void listen(const std::string& host, int port);
  void stop();

  int port() const noexcept { return port_; }
  std::string endpoint() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

// SentenceEmbedder backed by a ModelBackend's /embed route. Batches larger
// than kMaxEmbedBatch are split.
class ServiceEmbedder final : public embeddings::SentenceEmbedder {
 public:
  // Queries /health once to learn the dimension.
  explicit ServiceEmbedder(ModelBackend& backend);

  std::size_t dim() const override { return dim_; }
  embeddings::EmbedderKind kind() const override {
    return embeddings::EmbedderKind::kService;
  }
  std::vector<embeddings::Vector> embed(
      std::span<const std::string> texts) override;

 private:
  ModelBackend& backend_;
  std::size_t dim_;
};

}  // namespace bda::backend

#endif  // BDA_BACKEND_HPP_
