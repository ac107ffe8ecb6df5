#pragma once

// Client for the embedding sidecar:
//   GET  /health -> {"status":"ok","model":"<id>","dim":1024}   (503 while loading)
//   POST /embed  <- {"texts":[...],"normalize":true}
//                -> {"model":"<id>","dim":1024,"vectors":[[...],...]}
// Transport failures and 5xx responses are retried with exponential backoff;
// anything else, and exhausting the retries, is fatal.

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "occ2vec/embedding.hpp"
#include "occ2vec/embedding_cache.hpp"

namespace occ2vec {

class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(const EmbedderConfig& config) : config_(config) {
    config_.validate();
    auto [base, prefix] = split_url(config_.endpoint_url);
    prefix_ = std::move(prefix);
    client_ = std::make_unique<httplib::Client>(base);
    client_->set_connection_timeout(5, 0);
    client_->set_read_timeout(120, 0);
    client_->set_write_timeout(30, 0);
  }

  std::string backend_id() const override {
    ensure_ready();
    return "remote/" + model_;
  }

  std::size_t dim() const override { return config_.dim; }

  std::vector<Vector> embed_batch(std::span<const std::string> texts) override {
    ensure_ready();
    nlohmann::json body = {{"texts", std::vector<std::string>(texts.begin(), texts.end())}, {"normalize", true}};
    const auto res = with_retries("POST /embed", [&] {
      std::lock_guard lock(mu_);
      return client_->Post(prefix_ + "/embed", body.dump(), "application/json");
    });
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(res.body);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("remote embedder: malformed /embed response: ") + e.what());
    }
    const auto dim = doc.value("dim", std::size_t{0});
    if (dim != config_.dim)
      throw InputError("remote embedder: dimension mismatch: service returned dim " + std::to_string(dim) +
                       ", configured dim " + std::to_string(config_.dim));
    if (doc.value("model", std::string()) != model_)
      throw InputError("remote embedder: model changed during the run (" + doc.value("model", std::string()) + ")");
    const auto& vecs = doc.at("vectors");
    if (!vecs.is_array() || vecs.size() != texts.size())
      throw InputError("remote embedder: expected " + std::to_string(texts.size()) + " vectors");
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& v : vecs) {
      auto values = v.get<Vector>();
      if (values.size() != config_.dim)
        throw InputError("remote embedder: dimension mismatch: vector of length " + std::to_string(values.size()));
      out.push_back(std::move(values));
    }
    return out;
  }

  const std::string& model() const {
    ensure_ready();
    return model_;
  }

 private:
  static std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme = url.find("://");
    const auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {url, ""};
    std::string prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {url.substr(0, path_start), prefix};
  }

  template <typename Call>
  httplib::Response with_retries(const std::string& what, Call&& call) const {
    std::string last;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(config_.backoff_ms << (attempt - 1)));
      auto res = call();
      if (!res) {
        last = httplib::to_string(res.error());
        continue;
      }
      if (res->status >= 500) {
        last = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200)
        throw InputError("remote embedder: " + what + " failed with HTTP " + std::to_string(res->status) + ": " + res->body);
      return *res;
    }
    throw TransportError("remote embedder: " + what + " at " + config_.endpoint_url + " failed after " +
                         std::to_string(config_.max_retries + 1) + " attempts (" + last + ")");
  }

  void ensure_ready() const {
    std::call_once(ready_, [this] {
      const auto res = with_retries("GET /health", [&] {
        std::lock_guard lock(mu_);
        return client_->Get(prefix_ + "/health");
      });
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(res.body);
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("remote embedder: malformed /health response: ") + e.what());
      }
      const auto dim = doc.value("dim", std::size_t{0});
      if (dim != config_.dim)
        throw InputError("remote embedder: dimension mismatch: service reports dim " + std::to_string(dim) +
                         ", configured dim " + std::to_string(config_.dim));
      model_ = doc.value("model", std::string());
      if (model_.empty()) throw InputError("remote embedder: /health did not report a model id");
    });
  }

  EmbedderConfig config_;
  std::string prefix_;
  std::unique_ptr<httplib::Client> client_;
  mutable std::mutex mu_;
  mutable std::once_flag ready_;
  mutable std::string model_;
};

inline std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config) {
  config.validate();
  if (config.backend == Backend::remote) return std::make_unique<RemoteEmbedder>(config);
  return std::make_unique<HashEmbedder>(config.dim, config.seed);
}

/// Config-driven entry point: build the backend, then embed through the cache.
inline std::vector<EmbeddingVector> embed_texts(const EmbedderConfig& config, std::span<const std::string> texts,
                                                EmbeddingCache* cache = nullptr) {
  auto embedder = make_embedder(config);
  return embed_texts(*embedder, texts, cache, config.batch_size);
}

}  // namespace occ2vec
