#pragma once

// Desk-scale model of a BERT-style input pipeline: pair tokenization, the
// lookup / position / sequence functions, summed input embeddings, masked
// language model masking, the MLM cross-entropy and mean pooling. Whole-word
// tokens only; no transformer layers.
//
// The next-sentence objective is not implemented (RoBERTa drops it).

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/random.hpp"

namespace occ2vec::bert {

inline constexpr const char* kCls = "[CLS]";
inline constexpr const char* kSep = "[SEP]";
inline constexpr const char* kEos = "[EOS]";
inline constexpr const char* kMask = "[MASK]";

/// Pre-training hyperparameters of the large BERT / RoBERTa models. Recorded
/// for reference only.
struct PretrainingHyperparameters {
  int layers;
  int hidden_size;
  int feed_forward_size;
  int attention_heads;
  double dropout;
  int warmup_steps;
  double weight_decay;
  double peak_learning_rate;
  const char* learning_rate_decay;
  double gradient_clipping;
  int max_tokens;
  int minibatch_size;
  int max_steps;
  const char* activation;
  const char* optimizer;
  double adam_beta1;
  double adam_beta2;
  double adam_epsilon;
};

inline constexpr PretrainingHyperparameters kBertLarge{24,     1024, 4096,   16,     0.1,    10000, 0.01, 1e-4,  "linear",
                                                       0.0,    512,  256,    1000000, "gelu", "adam", 0.9,  0.999, 1e-6};
inline constexpr PretrainingHyperparameters kRobertaLarge{24,    1024, 4096,   16,     0.1,    30000, 0.01, 4e-4, "linear",
                                                          0.0,   512,  8000,   500000, "gelu", "adam", 0.9,  0.98, 1e-6};

/// Default masking rates.
inline constexpr double kSelectRate = 0.15;
inline constexpr double kMaskShare = 0.80;
inline constexpr double kKeepShare = 0.10;

inline bool is_special(const std::string& t) { return t == kCls || t == kSep || t == kEos || t == kMask; }

/// Ordered unique tokens with 1-based indices; specials come first.
class Vocabulary {
 public:
  explicit Vocabulary(std::span<const std::string> words) {
    for (const char* s : {kCls, kSep, kEos, kMask}) add(s);
    for (const auto& w : words) {
      if (w.empty()) throw InputError("vocabulary: empty token");
      if (is_special(w)) throw InputError("vocabulary: special token " + w + " listed as a word");
      if (!index_.contains(w)) add(w);
    }
  }

  std::size_t size() const { return tokens_.size(); }

  /// l(t, V) in [1, |V|].
  std::size_t index(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) throw InputError("vocabulary: unknown token '" + token + "'");
    return it->second;
  }
  bool contains(const std::string& token) const { return index_.contains(token); }
  const std::string& token(std::size_t index) const {
    if (index < 1 || index > tokens_.size()) throw InputError("vocabulary: index out of range");
    return tokens_[index - 1];
  }

 private:
  void add(const std::string& t) {
    tokens_.push_back(t);
    index_.emplace(t, tokens_.size());
  }
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::size_t sep_index = 0;  // 0-based position of [SEP]
};

/// [CLS] a... [SEP] b... [EOS], requiring len(a) + len(b) < max_tokens.
inline TokenSequence tokenize_pair(std::span<const std::string> a, std::span<const std::string> b,
                                   std::size_t max_tokens = 512) {
  if (a.empty() || b.empty()) throw InputError("tokenize_pair: both sequences must be nonempty");
  if (a.size() + b.size() >= max_tokens)
    throw InputError("tokenize_pair: combined length " + std::to_string(a.size() + b.size()) +
                     " is not below the limit " + std::to_string(max_tokens));
  TokenSequence s;
  s.tokens.reserve(a.size() + b.size() + 3);
  s.tokens.emplace_back(kCls);
  s.tokens.insert(s.tokens.end(), a.begin(), a.end());
  s.sep_index = s.tokens.size();
  s.tokens.emplace_back(kSep);
  s.tokens.insert(s.tokens.end(), b.begin(), b.end());
  s.tokens.emplace_back(kEos);
  return s;
}

/// 1-based position of occurrence `i` (0-based index into the sequence).
inline std::size_t position_of(std::size_t i, const TokenSequence& s) {
  if (i >= s.tokens.size()) throw InputError("position_of: index " + std::to_string(i) + " out of range");
  return i + 1;
}

/// 1 for [CLS] through [SEP], 2 afterwards.
inline int sequence_of(std::size_t i, const TokenSequence& s) {
  if (i >= s.tokens.size()) throw InputError("sequence_of: index " + std::to_string(i) + " out of range");
  return i <= s.sep_index ? 1 : 2;
}

/// phi_l: |V| rows, phi_p: one row per position, phi_s: 2 rows; all of width d.
struct EmbeddingTables {
  std::vector<std::vector<double>> phi_l, phi_p, phi_s;

  std::size_t dim() const { return phi_l.empty() ? 0 : phi_l.front().size(); }

  void validate(const Vocabulary& vocab) const {
    if (phi_l.size() != vocab.size()) throw InputError("embedding tables: phi_l must have |V| rows");
    if (phi_s.size() != 2) throw InputError("embedding tables: phi_s must have 2 rows");
    if (phi_p.empty()) throw InputError("embedding tables: phi_p is empty");
    const std::size_t d = dim();
    if (d == 0) throw InputError("embedding tables: zero width");
    for (const auto* t : {&phi_l, &phi_p, &phi_s})
      for (const auto& row : *t) {
        if (row.size() != d) throw InputError("embedding tables: rows differ in width");
        for (double v : row)
          if (!std::isfinite(v)) throw InputError("embedding tables: non-finite entry");
      }
  }

  static EmbeddingTables random(std::size_t vocab_size, std::size_t positions, std::size_t d, std::uint64_t seed) {
    CounterRng rng(seed);
    auto fill = [&](std::size_t rows) {
      std::vector<std::vector<double>> t(rows, std::vector<double>(d));
      for (auto& r : t)
        for (auto& v : r) v = rng.normal();
      return t;
    };
    EmbeddingTables e;
    e.phi_l = fill(vocab_size);
    e.phi_p = fill(positions);
    e.phi_s = fill(2);
    return e;
  }
};

/// phi_l(l(t)) + phi_p(p(t)) + phi_s(s(t)) for occurrence `i` of `s`.
inline std::vector<double> input_embedding(std::size_t i, const EmbeddingTables& tables, const Vocabulary& vocab,
                                           const TokenSequence& s) {
  const std::size_t l = vocab.index(s.tokens.at(i));
  const std::size_t p = position_of(i, s);
  const int q = sequence_of(i, s);
  if (l > tables.phi_l.size()) throw InputError("input_embedding: token table too small");
  if (p > tables.phi_p.size())
    throw InputError("input_embedding: position " + std::to_string(p) + " exceeds the position table (" +
                     std::to_string(tables.phi_p.size()) + " rows)");
  const auto& a = tables.phi_l[l - 1];
  const auto& b = tables.phi_p[p - 1];
  const auto& c = tables.phi_s.at(static_cast<std::size_t>(q - 1));
  if (a.size() != b.size() || a.size() != c.size()) throw InputError("input_embedding: table widths differ");
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k] + c[k];
  return out;
}

enum class MaskAction { masked, unchanged, random };

inline const char* to_string(MaskAction a) {
  switch (a) {
    case MaskAction::masked: return "masked";
    case MaskAction::unchanged: return "unchanged";
    case MaskAction::random: return "random";
  }
  return "?";
}

struct MaskedPosition {
  std::size_t position = 0;  // 0-based index into the sequence
  MaskAction action = MaskAction::masked;
  std::size_t original = 0;     // vocabulary index of the original token
  std::size_t replacement = 0;  // vocabulary index placed at the position
};

struct MaskingOutcome {
  std::vector<MaskedPosition> selected;  // ascending position
  std::vector<std::string> tokens;       // sequence after replacement
};

/// Each non-special token is selected with probability `select_rate`; a
/// selected token becomes [MASK] (80%), stays (10%) or becomes a uniformly
/// drawn vocabulary token (10%).
inline MaskingOutcome apply_mlm_mask(const TokenSequence& s, const Vocabulary& vocab, std::uint64_t seed,
                                     double select_rate = kSelectRate) {
  if (!(select_rate >= 0.0 && select_rate <= 1.0)) throw InputError("apply_mlm_mask: select rate outside [0, 1]");
  CounterRng rng(seed);
  MaskingOutcome out;
  out.tokens = s.tokens;
  const std::size_t mask_index = vocab.index(kMask);
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (is_special(s.tokens[i])) continue;
    const double u = rng.uniform();
    if (u >= select_rate) continue;
    MaskedPosition m;
    m.position = i;
    m.original = vocab.index(s.tokens[i]);
    const double v = rng.uniform();
    if (v < kMaskShare) {
      m.action = MaskAction::masked;
      m.replacement = mask_index;
    } else if (v < kMaskShare + kKeepShare) {
      m.action = MaskAction::unchanged;
      m.replacement = m.original;
    } else {
      m.action = MaskAction::random;
      m.replacement = 1 + rng.below(vocab.size());
    }
    out.tokens[i] = vocab.token(m.replacement);
    out.selected.push_back(m);
  }
  return out;
}

/// Numerically stable softmax.
inline std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw InputError("softmax: empty input");
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] = std::exp(logits[i] - mx);
  for (auto& v : p) v /= sum;
  return p;
}

struct CrossEntropy {
  double loss = 0.0;
  std::vector<double> gradient;  // d loss / d logits = p - onehot(true)
};

/// -log p_true for a predicted distribution; `true_index` is 1-based.
inline CrossEntropy mlm_cross_entropy(std::span<const double> probabilities, std::size_t true_index) {
  if (probabilities.empty()) throw InputError("mlm_cross_entropy: empty distribution");
  if (true_index < 1 || true_index > probabilities.size())
    throw InputError("mlm_cross_entropy: true index " + std::to_string(true_index) + " outside [1, " +
                     std::to_string(probabilities.size()) + "]");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw RangeError("mlm_cross_entropy: probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw RangeError("mlm_cross_entropy: probabilities do not sum to 1");
  const double pt = probabilities[true_index - 1];
  if (pt == 0.0) throw NumericalError("mlm_cross_entropy: p_true = 0 gives an infinite loss");
  CrossEntropy ce;
  ce.loss = -std::log(pt);
  if (ce.loss == 0.0) ce.loss = 0.0;  // no negative zero
  ce.gradient.assign(probabilities.begin(), probabilities.end());
  ce.gradient[true_index - 1] -= 1.0;
  return ce;
}

/// Cross-entropy of softmax(logits); the form used for gradient checks.
inline CrossEntropy mlm_cross_entropy_from_logits(std::span<const double> logits, std::size_t true_index) {
  return mlm_cross_entropy(softmax(logits), true_index);
}

/// Componentwise mean of word vectors.
inline std::vector<double> mean_pool(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) throw InputError("mean_pool: no vectors");
  std::vector<double> out(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    if (v.size() != out.size()) throw InputError("mean_pool: vectors differ in dimension");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[k];
  }
  for (auto& x : out) x /= static_cast<double>(vectors.size());
  return out;
}

}  // namespace occ2vec::bert
