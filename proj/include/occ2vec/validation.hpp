#pragma once

// Checks of estimated attribute scores against the O*NET ratings: per-attribute
// correlations across occupations ("between"), per-occupation correlations
// across attributes ("within"), and regressions of the rating on the estimate
// under every combination of occupation / descriptor / category dummies.

#include <cmath>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "occ2vec/aggregate.hpp"
#include "occ2vec/csv.hpp"
#include "occ2vec/ols.hpp"
#include "occ2vec/scoring.hpp"
#include "occ2vec/ttest.hpp"

namespace occ2vec {

struct ValidationPair {
  std::string soc_code;
  std::string element_id;
  std::string category;
  double onet_score = 0.0;  // standardized across occupations per element
  double estimate = 0.0;    // standardized similarity, per element
};

/// One pair per rated (occupation, attribute). Both the rating and the
/// similarity are standardized across the occupations rated on the attribute;
/// attributes with fewer than three ratings or no variation are skipped.
inline std::vector<ValidationPair> attribute_estimates(const DescriptorCatalog& catalog,
                                                       std::span<const Vector> descriptor_vectors,
                                                       std::span<const OccupationEmbedding> occupations,
                                                       std::size_t* skipped = nullptr) {
  if (occupations.size() != catalog.size()) throw InputError("attribute_estimates: occupation count mismatch");
  // element -> (occupation, unit score), in occupation order
  std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> rated;
  for (const auto& [key, bundle] : catalog.bundles())
    for (const auto& wd : bundle)
      if (catalog.descriptors()[wd.descriptor].kind == DescriptorKind::attribute)
        rated[wd.descriptor].emplace_back(key.occupation, wd.unit_score);

  std::vector<ValidationPair> out;
  std::size_t skip = 0;
  for (auto& [d, list] : rated) {
    std::sort(list.begin(), list.end());
    if (list.size() < 3) {
      ++skip;
      continue;
    }
    if (d >= descriptor_vectors.size() || descriptor_vectors[d].empty())
      throw InputError("missing embedding for descriptor " + catalog.descriptors()[d].element_id);
    std::vector<double> raw, onet;
    for (const auto& [occ, score] : list) {
      raw.push_back(similarity(occupations[occ].vector, descriptor_vectors[d]));
      onet.push_back(score);
    }
    std::vector<double> zr, zo;
    try {
      zr = standardize(raw);
      zo = standardize(onet);
    } catch (const NumericalError&) {
      ++skip;
      continue;
    }
    const auto& desc = catalog.descriptors()[d];
    for (std::size_t i = 0; i < list.size(); ++i)
      out.push_back(ValidationPair{catalog.occupations()[list[i].first].soc_code, desc.element_id,
                                   std::string(to_string(desc.category)), zo[i], zr[i]});
  }
  if (skipped) *skipped = skip;
  return out;
}

inline std::string validation_pairs_csv(std::span<const ValidationPair> pairs) {
  csv::Writer w({"soc_code", "element_id", "category", "onet_score", "estimate"});
  for (const auto& p : pairs)
    w.row({p.soc_code, p.element_id, p.category, text::shortest(p.onet_score), text::shortest(p.estimate)});
  return w.str();
}

inline std::vector<ValidationPair> read_validation_pairs(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  std::vector<std::size_t> c;
  for (const char* name : {"soc_code", "element_id", "category", "onet_score", "estimate"}) {
    auto col = t.column(name);
    if (!col) throw InputError(path.string() + ": missing column '" + name + "'");
    c.push_back(*col);
  }
  std::vector<ValidationPair> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    auto onet = text::to_double(r[c[3]]), est = text::to_double(r[c[4]]);
    if (!onet || !est || !std::isfinite(*onet) || !std::isfinite(*est))
      throw InputError(path.string() + ": unparseable number on line " + std::to_string(t.lines[i]));
    out.push_back(ValidationPair{r[c[0]], r[c[1]], r[c[2]], *onet, *est});
  }
  if (out.empty()) throw InputError(path.string() + ": no validation pairs");
  return out;
}

struct GroupCorrelations {
  std::vector<std::string> groups;
  std::vector<double> correlations;
  std::size_t skipped = 0;  // groups with < 3 pairs or a constant series
};

namespace detail {

template <class Key>
GroupCorrelations correlate_by(std::span<const ValidationPair> pairs, Key key) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by;
  for (const auto& p : pairs) {
    auto& [a, b] = by[key(p)];
    a.push_back(p.onet_score);
    b.push_back(p.estimate);
  }
  GroupCorrelations g;
  for (const auto& [name, xy] : by) {
    if (xy.first.size() < 3) {
      ++g.skipped;
      continue;
    }
    try {
      g.correlations.push_back(stats::pearson(xy.first, xy.second));
      g.groups.push_back(name);
    } catch (const NumericalError&) {
      ++g.skipped;
    }
  }
  return g;
}

}  // namespace detail

/// Per-attribute correlation across occupations.
inline GroupCorrelations between_occupations(std::span<const ValidationPair> pairs) {
  return detail::correlate_by(pairs, [](const ValidationPair& p) { return p.element_id; });
}

/// Per-occupation correlation across attributes.
inline GroupCorrelations within_occupations(std::span<const ValidationPair> pairs) {
  return detail::correlate_by(pairs, [](const ValidationPair& p) { return p.soc_code; });
}

struct RegressionSpec {
  bool occupation = false;
  bool descriptor = false;
  bool category = false;
};

/// The eight dummy combinations: none, each alone, each pair, all three.
inline std::vector<RegressionSpec> regression_specs() {
  return {{false, false, false}, {true, false, false}, {false, true, false}, {false, false, true},
          {true, true, false},   {true, false, true},  {false, true, true},  {true, true, true}};
}

inline stats::OlsResult regress_onet_on_estimate(std::span<const ValidationPair> pairs, const RegressionSpec& spec) {
  std::vector<double> y, x;
  std::map<std::string, std::size_t> occ_ids, desc_ids, cat_ids;
  stats::FixedEffect occ{"occupation", {}}, desc{"descriptor", {}}, cat{"category", {}};
  auto id = [](std::map<std::string, std::size_t>& m, const std::string& k) {
    return m.try_emplace(k, m.size()).first->second;
  };
  for (const auto& p : pairs) {
    y.push_back(p.onet_score);
    x.push_back(p.estimate);
    occ.codes.push_back(id(occ_ids, p.soc_code));
    desc.codes.push_back(id(desc_ids, p.element_id));
    cat.codes.push_back(id(cat_ids, p.category));
  }
  std::vector<stats::FixedEffect> effects;
  if (spec.occupation) effects.push_back(std::move(occ));
  if (spec.descriptor) effects.push_back(std::move(desc));
  if (spec.category) effects.push_back(std::move(cat));
  return stats::ols_fixed_effects(y, x, effects);
}

}  // namespace occ2vec
