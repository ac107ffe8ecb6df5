#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/random.hpp"
#include "occ2vec/text.hpp"

namespace occ2vec {

using Vector = std::vector<double>;

struct EmbeddingVector {
  Vector values;
  std::string source_key;  // hash of the embedded text
  std::string backend_id;

  std::size_t dim() const noexcept { return values.size(); }
};

enum class Backend { hash, remote };

struct EmbedderConfig {
  Backend backend = Backend::hash;
  std::size_t dim = 1024;
  std::uint64_t seed = 0;
  std::string endpoint_url;
  std::size_t batch_size = 32;
  int max_retries = 3;
  int backoff_ms = 250;

  void validate() const {
    if (dim < 2) throw InputError("embedder: dim must be at least 2");
    if (batch_size < 1) throw InputError("embedder: batch_size must be at least 1");
    if (backend == Backend::remote && endpoint_url.empty()) throw InputError("embedder: remote backend needs an endpoint");
  }
};

/// 128-bit text fingerprint as 32 hex digits.
inline std::string text_key(std::string_view text) {
  const std::uint64_t a = fnv1a64(text);
  const std::uint64_t b = mix64(fnv1a64(text, 0x84222325cbf29ce4ULL) ^ text.size());
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a), static_cast<unsigned long long>(b));
  return buf;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Pseudo-random unit vector for one token: the seeded token hash keys a
/// counter-based generator that yields `dim` standard normals.
inline Vector token_vector(std::string_view token, std::size_t dim, std::uint64_t seed) {
  CounterRng rng(fnv1a64(token) ^ mix64(seed ^ 0x5bd1e9955bd1e995ULL));
  Vector v(dim);
  for (auto& x : v) x = rng.normal();
  const double n = norm2(v);
  for (auto& x : v) x /= n;
  return v;
}

/// Deterministic bag-of-words embedding: lowercase, split on non-alphanumeric
/// runs, mean-pool the token vectors and scale to unit length.
inline Vector hash_embed(std::string_view text, std::size_t dim, std::uint64_t seed) {
  if (dim < 2) throw InputError("hash_embed: dim must be at least 2");
  const auto tokens = text::word_tokens(text);
  if (tokens.empty()) throw InputError("hash_embed: text has no tokens: '" + std::string(text) + "'");
  Vector mean(dim, 0.0);
  for (const auto& t : tokens) {
    const auto v = token_vector(t, dim, seed);
    for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
  }
  for (auto& x : mean) x /= static_cast<double>(tokens.size());
  const double n = norm2(mean);
  if (!(n > 0.0)) throw NumericalError("hash_embed: token vectors cancel exactly");
  for (auto& x : mean) x /= n;
  return mean;
}

/// An embedding backend: a function from texts to fixed-length vectors.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string backend_id() const = 0;
  virtual std::size_t dim() const = 0;
  /// One vector per text, same order.
  virtual std::vector<Vector> embed_batch(std::span<const std::string> texts) = 0;
};

class HashEmbedder final : public Embedder {
 public:
  HashEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim < 2) throw InputError("hash embedder: dim must be at least 2");
  }

  std::string backend_id() const override { return "hash/s" + std::to_string(seed_); }
  std::size_t dim() const override { return dim_; }

  std::vector<Vector> embed_batch(std::span<const std::string> texts) override {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(hash_embed(t, dim_, seed_));
    return out;
  }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

/// Round every component to IEEE single precision, the storage precision of
/// the cache, so cached and freshly computed vectors agree bitwise.
inline void quantize_to_float(Vector& v) {
  for (auto& x : v) x = static_cast<double>(static_cast<float>(x));
}

}  // namespace occ2vec
