#pragma once

#include <algorithm>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "occ2vec/aggregate.hpp"
#include "occ2vec/characteristic.hpp"
#include "occ2vec/correlation.hpp"
#include "occ2vec/csv.hpp"
#include "occ2vec/embedding_cache.hpp"
#include "occ2vec/moments.hpp"

namespace occ2vec {

/// Mean of the per-definition embeddings.
inline Vector characteristic_embedding(Embedder& embedder, const CharacteristicDefinition& characteristic,
                                       EmbeddingCache* cache = nullptr) {
  if (characteristic.definitions.empty())
    throw InputError("characteristic " + characteristic.name + " has no definitions");
  const auto vecs = embed_texts(embedder, characteristic.definitions, cache);
  Vector out(vecs.front().dim(), 0.0);
  for (const auto& v : vecs)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += v.values[c];
  for (auto& x : out) x /= static_cast<double>(vecs.size());
  return out;
}

/// Correlation between two embeddings across their components.
inline double similarity(std::span<const double> occ_vec, std::span<const double> char_vec) {
  if (occ_vec.size() != char_vec.size()) throw InputError("similarity: vectors differ in dimension");
  if (occ_vec.size() < 2) throw InputError("similarity: dimension must be at least 2");
  return stats::pearson(occ_vec, char_vec);
}

struct ScoreRow {
  std::string soc_code;
  std::string title;
  double raw_corr = 0.0;
  double z_score = 0.0;
};

struct ScoreTable {
  std::string characteristic_name;
  std::vector<ScoreRow> rows;  // input occupation order
};

/// Similarity of every occupation to the characteristic, standardized across
/// occupations (sample sd).
inline ScoreTable score_all(std::span<const OccupationEmbedding> occupations, std::span<const double> char_vec,
                            std::string name = {}) {
  if (occupations.size() < 2) throw InputError("score_all: need at least two occupations");
  ScoreTable t;
  t.characteristic_name = std::move(name);
  std::vector<double> raw;
  raw.reserve(occupations.size());
  for (const auto& o : occupations) raw.push_back(similarity(o.vector, char_vec));
  const auto z = standardize(raw, "score_all");
  for (std::size_t i = 0; i < occupations.size(); ++i)
    t.rows.push_back(ScoreRow{occupations[i].soc_code, occupations[i].title, raw[i], z[i]});
  return t;
}

/// Descending by z, ties by SOC code ascending.
inline std::vector<ScoreRow> sorted_by_score(const ScoreTable& t) {
  auto rows = t.rows;
  std::sort(rows.begin(), rows.end(), [](const ScoreRow& a, const ScoreRow& b) {
    return a.z_score > b.z_score || (a.z_score == b.z_score && a.soc_code < b.soc_code);
  });
  return rows;
}

/// Top-n descending and bottom-n ascending by z; ties broken by SOC code.
inline std::pair<std::vector<ScoreRow>, std::vector<ScoreRow>> top_bottom(const ScoreTable& t, std::size_t n) {
  if (n < 1 || n > t.rows.size()) throw InputError("top_bottom: n must lie in [1, #occupations]");
  auto desc = sorted_by_score(t);
  std::vector<ScoreRow> top(desc.begin(), desc.begin() + static_cast<std::ptrdiff_t>(n));
  auto asc = t.rows;
  std::sort(asc.begin(), asc.end(), [](const ScoreRow& a, const ScoreRow& b) {
    return a.z_score < b.z_score || (a.z_score == b.z_score && a.soc_code < b.soc_code);
  });
  std::vector<ScoreRow> bottom(asc.begin(), asc.begin() + static_cast<std::ptrdiff_t>(n));
  return {std::move(top), std::move(bottom)};
}

/// CSV `soc_code,title,raw_corr,z_score`, 6 decimals, sorted by z descending.
inline std::string score_table_csv(const ScoreTable& t) {
  csv::Writer w({"soc_code", "title", "raw_corr", "z_score"});
  for (const auto& r : sorted_by_score(t)) w.row({r.soc_code, r.title, csv::fixed(r.raw_corr), csv::fixed(r.z_score)});
  return w.str();
}

inline ScoreTable read_score_table(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto c_soc = t.column("soc_code"), c_title = t.column("title"), c_raw = t.column("raw_corr"),
             c_z = t.column("z_score");
  if (!c_soc || !c_title || !c_raw || !c_z) throw InputError(path.string() + ": not a score table");
  ScoreTable out;
  out.characteristic_name = path.stem().string();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const auto raw = text::to_double(r[*c_raw]), z = text::to_double(r[*c_z]);
    if (!raw || !z) throw InputError(path.string() + ": unparseable number on line " + std::to_string(t.lines[i]));
    out.rows.push_back(ScoreRow{r[*c_soc], r[*c_title], *raw, *z});
  }
  return out;
}

}  // namespace occ2vec
