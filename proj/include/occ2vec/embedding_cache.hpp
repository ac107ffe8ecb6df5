#pragma once

// Vector cache file:
//   magic "OCC2VEC1" | u32 dim | records...
//   record = u16 key length | key bytes (UTF-8) | dim x f32
// All integers and floats little-endian. Keys are "<backend id>|<text key>",
// and one file holds vectors of a single backend.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "occ2vec/binary.hpp"
#include "occ2vec/embedding.hpp"

namespace occ2vec {

inline constexpr std::string_view kCacheMagic = "OCC2VEC1";

class EmbeddingCache {
 public:
  EmbeddingCache(const EmbeddingCache&) = delete;
  EmbeddingCache& operator=(const EmbeddingCache&) = delete;
  EmbeddingCache(EmbeddingCache&& o) noexcept { *this = std::move(o); }
  EmbeddingCache& operator=(EmbeddingCache&& o) noexcept {
    if (this != &o) {
      close_fd();
      path_ = std::move(o.path_);
      dim_ = o.dim_;
      backend_id_ = std::move(o.backend_id_);
      entries_ = std::move(o.entries_);
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~EmbeddingCache() { close_fd(); }

  /// Read-only view of an existing cache file.
  static EmbeddingCache open_read(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw InputError("cache file not found: " + path.string());
    EmbeddingCache c;
    c.path_ = path;
    c.load(binary::read_file(path), std::nullopt);
    return c;
  }

  /// Open for appending, creating the file if needed. Takes an exclusive
  /// advisory lock for the lifetime of the object.
  static EmbeddingCache open_write(const std::filesystem::path& path, std::size_t dim, std::string backend_id) {
    if (dim == 0) throw InputError("cache: dim must be positive");
    EmbeddingCache c;
    c.path_ = path;
    c.fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (c.fd_ < 0) throw InputError("cannot open cache " + path.string() + ": " + std::strerror(errno));
    if (::flock(c.fd_, LOCK_EX | LOCK_NB) != 0)
      throw InputError("cache " + path.string() + " is locked by another writer");
    const auto existing = binary::read_file(path);
    if (existing.empty()) {
      std::string header(kCacheMagic);
      binary::put<std::uint32_t>(header, static_cast<std::uint32_t>(dim));
      c.write_all(header);
      c.dim_ = dim;
      c.backend_id_ = std::move(backend_id);
    } else {
      c.load(existing, backend_id);
      if (c.dim_ != dim)
        throw InputError("cache " + path.string() + " holds dim " + std::to_string(c.dim_) + ", requested " + std::to_string(dim));
      c.backend_id_ = std::move(backend_id);
    }
    return c;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::string& backend_id() const noexcept { return backend_id_; }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }
  const std::filesystem::path& path() const noexcept { return path_; }

  std::optional<EmbeddingVector> get(const std::string& source_key) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(source_key);
    if (it == entries_.end()) return std::nullopt;
    EmbeddingVector v;
    v.values.assign(it->second.begin(), it->second.end());
    v.source_key = source_key;
    v.backend_id = backend_id_;
    return v;
  }

  /// Values are stored as f32; callers wanting bit-exact round trips should
  /// pass float-representable values (see quantize_to_float).
  void put(const EmbeddingVector& v) {
    if (fd_ < 0) throw InputError("cache " + path_.string() + " is open read-only");
    if (v.dim() != dim_) throw InputError("cache: vector dim " + std::to_string(v.dim()) + " != cache dim " + std::to_string(dim_));
    if (v.backend_id != backend_id_) throw InputError("cache: vector from backend '" + v.backend_id + "' in cache of '" + backend_id_ + "'");
    const std::string key = backend_id_ + "|" + v.source_key;
    if (key.size() > 0xFFFF) throw InputError("cache: key too long");
    std::vector<float> f(v.values.begin(), v.values.end());
    for (float x : f)
      if (!std::isfinite(x)) throw NumericalError("cache: non-finite component in vector " + v.source_key);

    std::string rec;
    rec.reserve(2 + key.size() + 4 * f.size());
    binary::put<std::uint16_t>(rec, static_cast<std::uint16_t>(key.size()));
    rec += key;
    for (float x : f) binary::put<float>(rec, x);

    std::lock_guard lock(mu_);
    write_all(rec);
    entries_[v.source_key] = std::move(f);
  }

 private:
  EmbeddingCache() = default;

  void load(std::string_view bytes, const std::optional<std::string>& expected_backend) {
    binary::Reader r(bytes, "cache " + path_.string());
    if (bytes.size() < kCacheMagic.size() || r.take(kCacheMagic.size()) != kCacheMagic)
      throw InputError("cache " + path_.string() + ": bad magic at offset 0");
    dim_ = r.get<std::uint32_t>();
    if (dim_ == 0) r.fail("zero dimension");
    while (!r.done()) {
      const std::size_t start = r.offset();
      const auto len = r.get<std::uint16_t>();
      const std::string key(r.take(len));
      const auto bar = key.rfind('|');
      if (bar == std::string::npos) throw InputError("cache " + path_.string() + ": malformed key at offset " + std::to_string(start));
      const std::string backend = key.substr(0, bar);
      if (backend_id_.empty()) backend_id_ = backend;
      if (backend != backend_id_ || (expected_backend && backend != *expected_backend))
        throw InputError("cache " + path_.string() + ": record at offset " + std::to_string(start) + " comes from backend '" +
                         backend + "', expected '" + (expected_backend ? *expected_backend : backend_id_) + "'");
      std::vector<float> values(dim_);
      for (auto& x : values) x = r.get<float>();
      entries_[key.substr(bar + 1)] = std::move(values);
    }
  }

  void write_all(std::string_view data) {
    while (!data.empty()) {
      const auto n = ::write(fd_, data.data(), data.size());
      if (n < 0) {
        if (errno == EINTR) continue;
        throw InputError("cache write failed: " + std::string(std::strerror(errno)));
      }
      data.remove_prefix(static_cast<std::size_t>(n));
    }
  }

  void close_fd() noexcept {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
      fd_ = -1;
    }
  }

  std::filesystem::path path_;
  std::size_t dim_ = 0;
  std::string backend_id_;
  std::unordered_map<std::string, std::vector<float>> entries_;
  int fd_ = -1;
  mutable std::mutex mu_;
};

/// Embed `texts` in order, consulting `cache` first and storing misses. Every
/// returned vector is rounded to float precision whether or not it came from
/// the cache, so results are reproducible bit for bit across runs.
inline std::vector<EmbeddingVector> embed_texts(Embedder& embedder, std::span<const std::string> texts,
                                                EmbeddingCache* cache = nullptr, std::size_t batch_size = 32) {
  if (texts.empty()) throw InputError("embed_texts: no texts");
  if (batch_size == 0) batch_size = 1;
  const std::string backend = embedder.backend_id();
  const std::size_t dim = embedder.dim();
  if (cache && cache->dim() != dim)
    throw InputError("embed_texts: cache dim " + std::to_string(cache->dim()) + " != backend dim " + std::to_string(dim));
  if (cache && cache->backend_id() != backend)
    throw InputError("embed_texts: cache holds backend '" + cache->backend_id() + "', embedder is '" + backend + "'");

  std::vector<EmbeddingVector> out(texts.size());
  std::unordered_map<std::string, std::vector<std::size_t>> pending;  // key -> output slots
  std::vector<std::string> miss_keys, miss_texts;

  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (text::trim(texts[i]).empty()) throw InputError("embed_texts: empty text at position " + std::to_string(i));
    auto key = text_key(texts[i]);
    if (cache) {
      if (auto hit = cache->get(key)) {
        out[i] = std::move(*hit);
        continue;
      }
    }
    auto [it, fresh] = pending.try_emplace(key);
    if (fresh) {
      miss_keys.push_back(key);
      miss_texts.push_back(texts[i]);
    }
    it->second.push_back(i);
  }

  for (std::size_t b = 0; b < miss_texts.size(); b += batch_size) {
    const std::size_t n = std::min(batch_size, miss_texts.size() - b);
    auto vectors = embedder.embed_batch(std::span<const std::string>(miss_texts).subspan(b, n));
    if (vectors.size() != n)
      throw InputError("embed_texts: backend returned " + std::to_string(vectors.size()) + " vectors for " + std::to_string(n) + " texts");
    for (std::size_t j = 0; j < n; ++j) {
      if (vectors[j].size() != dim)
        throw InputError("embed_texts: dimension mismatch: backend returned " + std::to_string(vectors[j].size()) +
                         ", expected " + std::to_string(dim));
      EmbeddingVector ev{std::move(vectors[j]), miss_keys[b + j], backend};
      quantize_to_float(ev.values);
      for (double x : ev.values)
        if (!std::isfinite(x)) throw NumericalError("embed_texts: non-finite component from backend");
      if (cache) cache->put(ev);
      for (std::size_t slot : pending[miss_keys[b + j]]) out[slot] = ev;
    }
  }
  return out;
}

}  // namespace occ2vec
