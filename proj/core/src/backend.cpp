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

#include "bda/backend.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <thread>

#include "bda/error.hpp"
#include "bda/textops.hpp"

namespace bda::backend {
namespace {

using nlohmann::json;

void require_text(const std::string& text) {
  if (textops::is_blank(text)) throw BackendError("empty text", 400);
}

std::string status_message(int status, const std::string& body) {
  std::string message = "backend returned HTTP " + std::to_string(status);
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      message += ": " + j["error"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return message;
}

std::string text_field(const std::string& body, const char* route) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(std::string(route) + ": malformed response: " +
                       e.what());
  }
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
    throw BackendError(std::string(route) + ": response lacks \"text\"");
  }
  std::string text = j["text"].get<std::string>();
  if (textops::is_blank(text)) {
    throw BackendError(std::string(route) + ": empty response");
  }
  return text;
}

}  // namespace

// ---------------------------------------------------------------- MockBackend

MockBackend::MockBackend(std::size_t dim, std::uint64_t seed)
    : embedder_(dim, seed) {}

std::string MockBackend::translate(const std::string& text,
                                   const std::string& src,
                                   const std::string& tgt) {
  require_text(text);
  if (src == tgt) throw BackendError("src and tgt must differ", 400);
  textops::TokenSequence tokens = textops::tokenize(text);
  std::rotate(tokens.rbegin(), tokens.rbegin() + 1, tokens.rend());
  return textops::detokenize(tokens);
}

std::string MockBackend::paraphrase(const std::string& text) {
  require_text(text);
  textops::TokenSequence tokens = textops::tokenize(text);
  std::reverse(tokens.begin(), tokens.end());
  return textops::detokenize(tokens);
}

std::vector<embeddings::Vector> MockBackend::embed(
    std::span<const std::string> texts) {
  if (texts.empty()) throw BackendError("empty batch", 400);
  if (texts.size() > kMaxEmbedBatch) {
    throw BackendError("batch larger than " + std::to_string(kMaxEmbedBatch),
                       413);
  }
  return embedder_.embed(texts);
}

Health MockBackend::health() { return {"ok", embedder_.dim()}; }

// ---------------------------------------------------------------- HttpBackend

HttpBackend::HttpBackend(std::string endpoint,
                         std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  if (endpoint_.empty()) throw DomainError("backend endpoint is empty");
  if (endpoint_.find("://") == std::string::npos) {
    endpoint_ = "http://" + endpoint_;
  }
}

std::string HttpBackend::post(const std::string& path,
                              const std::string& body) {
  httplib::Client client(endpoint_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  const auto res = client.Post(path, body, "application/json");
  if (!res) {
    throw BackendError(endpoint_ + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError(endpoint_ + path + ": " +
                           status_message(res->status, res->body),
                       res->status);
  }
  return res->body;
}

std::string HttpBackend::translate(const std::string& text,
                                   const std::string& src,
                                   const std::string& tgt) {
  const json req = {{"text", text}, {"src", src}, {"tgt", tgt}};
  return text_field(post("/translate", req.dump()), "/translate");
}

std::string HttpBackend::paraphrase(const std::string& text) {
  const json req = {{"text", text}};
  return text_field(post("/paraphrase", req.dump()), "/paraphrase");
}

std::vector<embeddings::Vector> HttpBackend::embed(
    std::span<const std::string> texts) {
  const json req = {{"texts", std::vector<std::string>(texts.begin(),
                                                       texts.end())}};
  const std::string body = post("/embed", req.dump());
  std::vector<embeddings::Vector> out;
  try {
    const json j = json::parse(body);
    const auto dim = j.at("dim").get<std::size_t>();
    out = j.at("vectors").get<std::vector<embeddings::Vector>>();
    if (out.size() != texts.size()) {
      throw BackendError("/embed: expected " + std::to_string(texts.size()) +
                         " vectors, got " + std::to_string(out.size()));
    }
    for (const auto& v : out) {
      if (v.size() != dim) throw BackendError("/embed: vector length != dim");
      for (double x : v) {
        if (!std::isfinite(x)) throw BackendError("/embed: non-finite value");
      }
    }
  } catch (const json::exception& e) {
    throw BackendError(std::string("/embed: malformed response: ") + e.what());
  }
  return out;
}

Health HttpBackend::health() {
  httplib::Client client(endpoint_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  const auto res = client.Get("/health");
  if (!res) {
    throw BackendError(endpoint_ + "/health: " +
                       httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendError(endpoint_ + "/health: " +
                           status_message(res->status, res->body),
                       res->status);
  }
  try {
    const json j = json::parse(res->body);
    return {j.at("status").get<std::string>(), j.at("dim").get<std::size_t>()};
  } catch (const json::exception& e) {
    throw BackendError(std::string("/health: malformed response: ") +
                       e.what());
  }
}

// ----------------------------------------------------------------- MockServer

struct MockServer::Impl {
  MockBackend backend;
  httplib::Server server;
  std::thread thread;

  Impl(std::size_t dim, std::uint64_t seed) : backend(dim, seed) {
    const auto reply = [](httplib::Response& res, int status, const json& j) {
      res.status = status;
      res.set_content(j.dump(), "application/json");
    };
    // Runs `fn` on the parsed body, mapping failures onto protocol statuses.
    const auto handle = [this, reply](const httplib::Request& req,
                                      httplib::Response& res, auto fn) {
      json body;
      try {
        body = json::parse(req.body);
        if (!body.is_object()) throw std::invalid_argument("not an object");
      } catch (const std::exception& e) {
        reply(res, 400, {{"error", std::string("malformed body: ") + e.what()}});
        return;
      }
      try {
        reply(res, 200, fn(body));
      } catch (const BackendError& e) {
        reply(res, e.status() != 0 ? e.status() : 500, {{"error", e.what()}});
      } catch (const json::exception& e) {
        reply(res, 400, {{"error", e.what()}});
      }
    };

    server.Post("/translate", [this, handle](const httplib::Request& req,
                                             httplib::Response& res) {
      handle(req, res, [this](const json& b) {
        return json{{"text", backend.translate(b.at("text").get<std::string>(),
                                               b.at("src").get<std::string>(),
                                               b.at("tgt").get<std::string>())}};
      });
    });
    server.Post("/paraphrase", [this, handle](const httplib::Request& req,
                                              httplib::Response& res) {
      handle(req, res, [this](const json& b) {
        return json{
            {"text", backend.paraphrase(b.at("text").get<std::string>())}};
      });
    });
    server.Post("/embed", [this, handle](const httplib::Request& req,
                                         httplib::Response& res) {
      handle(req, res, [this](const json& b) {
        const auto texts = b.at("texts").get<std::vector<std::string>>();
        return json{{"dim", backend.health().dim},
                    {"vectors", backend.embed(texts)}};
      });
    });
    server.Get("/health", [this, reply](const httplib::Request&,
                                        httplib::Response& res) {
      const Health h = backend.health();
      reply(res, 200, {{"status", h.status}, {"dim", h.dim}});
    });
  }
};

MockServer::MockServer(std::size_t dim, std::uint64_t seed)
    : impl_(std::make_unique<Impl>(dim, seed)) {}

MockServer::~MockServer() { stop(); }

int MockServer::start(const std::string& host, int port) {
  if (impl_->thread.joinable()) return port_;
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
  } else {
    port_ = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (port_ < 0) {
    throw BackendError("mock server cannot bind " + host + ":" +
                       std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void MockServer::listen(const std::string& host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw BackendError("mock server cannot listen on " + host + ":" +
                       std::to_string(port));
  }
}

void MockServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string MockServer::endpoint() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

// ------------------------------------------------------------ ServiceEmbedder

ServiceEmbedder::ServiceEmbedder(ModelBackend& backend)
    : backend_(backend), dim_(backend.health().dim) {
  if (dim_ == 0) throw BackendError("backend reports embedding dim 0");
}

std::vector<embeddings::Vector> ServiceEmbedder::embed(
    std::span<const std::string> texts) {
  std::vector<embeddings::Vector> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += kMaxEmbedBatch) {
    const std::size_t len = std::min(kMaxEmbedBatch, texts.size() - begin);
    auto part = backend_.embed(texts.subspan(begin, len));
    if (part.size() != len) throw BackendError("/embed: batch shape mismatch");
    for (auto& v : part) {
      if (v.size() != dim_) {
        throw BackendError("/embed: dimension changed from " +
                           std::to_string(dim_) + " to " +
                           std::to_string(v.size()));
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace bda::backend
