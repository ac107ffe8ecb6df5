#pragma once

// Abstract / manual / routine task measures built from O*NET element scores.
// Each subscale is the standardized sum of its elements and each measure the
// standardized sum of its subscales. Reversed elements are negated before
// summation.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "occ2vec/catalog.hpp"
#include "occ2vec/moments.hpp"

namespace occ2vec {

struct CompositeElement {
  std::string element_id;
  bool reversed = false;
};

struct CompositeSubscale {
  std::string name;
  std::vector<CompositeElement> elements;
};

struct CompositeSpec {
  std::string name;
  std::vector<CompositeSubscale> subscales;
};

inline const std::vector<CompositeSpec>& task_measure_specs() {
  static const std::vector<CompositeSpec> specs = {
      {"abstract",
       {{"Non-routine cognitive: Analytical", {{"4.A.2.a.4"}, {"4.A.2.b.2"}, {"4.A.4.a.1"}}},
        {"Non-routine cognitive: Interpersonal", {{"4.A.4.a.4"}, {"4.A.4.b.4"}, {"4.A.4.b.5"}}}}},
      {"manual", {{"Non-routine manual", {{"4.A.3.a.4"}, {"4.C.2.d.1.g"}, {"1.A.2.a.2"}, {"1.A.1.f.1"}}}}},
      {"routine",
       {{"Routine cognitive", {{"4.C.3.b.7"}, {"4.C.3.b.4"}, {"4.C.3.b.8", true}}},
        {"Routine manual", {{"4.C.3.d.3"}, {"4.A.3.a.3"}, {"4.C.2.d.1.i"}}}}},
  };
  return specs;
}

inline const CompositeSpec& task_measure_spec(const std::string& name) {
  for (const auto& s : task_measure_specs())
    if (s.name == name) return s;
  throw InputError("unknown task measure '" + name + "' (expected abstract, manual or routine)");
}

/// Per-occupation element scores: `values[element_id][i]` is the score of
/// occupation `soc_codes[i]`; NaN marks a missing rating.
struct ElementScores {
  std::vector<std::string> soc_codes;
  std::map<std::string, std::vector<double>> values;
};

/// Combined [0,1] attribute ratings from a catalog.
inline ElementScores element_scores(const DescriptorCatalog& catalog) {
  ElementScores s;
  const std::size_t n = catalog.size();
  for (const auto& o : catalog.occupations()) s.soc_codes.push_back(o.soc_code);
  for (std::size_t d : catalog.attribute_indices())
    s.values.emplace(catalog.descriptors()[d].element_id, std::vector<double>(n, std::nan("")));
  for (const auto& [key, bundle] : catalog.bundles())
    for (const auto& wd : bundle) {
      const auto& d = catalog.descriptors()[wd.descriptor];
      if (d.kind == DescriptorKind::attribute) s.values[d.element_id][key.occupation] = wd.unit_score;
    }
  return s;
}

struct CompositeMeasure {
  std::string name;
  std::vector<std::string> soc_codes;
  std::vector<double> values;
  std::map<std::string, std::vector<double>> subscale_values;
};

inline CompositeMeasure composite_task_measure(const ElementScores& scores, const CompositeSpec& spec) {
  const std::size_t n = scores.soc_codes.size();
  std::vector<std::string> gaps;
  for (const auto& sub : spec.subscales)
    for (const auto& el : sub.elements) {
      auto it = scores.values.find(el.element_id);
      if (it == scores.values.end() || it->second.size() != n) {
        gaps.push_back(el.element_id);
        continue;
      }
      std::size_t missing = 0;
      for (double v : it->second) missing += std::isnan(v) ? 1 : 0;
      if (missing) gaps.push_back(el.element_id + " (" + std::to_string(missing) + " occupations unrated)");
    }
  if (!gaps.empty()) {
    std::string msg = "composite " + spec.name + ": missing elements:";
    for (const auto& g : gaps) msg += " " + g;
    throw InputError(msg);
  }

  CompositeMeasure m;
  m.name = spec.name;
  m.soc_codes = scores.soc_codes;
  std::vector<double> total(n, 0.0);
  for (const auto& sub : spec.subscales) {
    std::vector<double> sum(n, 0.0);
    for (const auto& el : sub.elements) {
      const auto& v = scores.values.at(el.element_id);
      for (std::size_t i = 0; i < n; ++i) sum[i] += el.reversed ? -v[i] : v[i];
    }
    auto z = standardize(sum, "composite " + spec.name + " subscale '" + sub.name + "'");
    for (std::size_t i = 0; i < n; ++i) total[i] += z[i];
    m.subscale_values.emplace(sub.name, std::move(z));
  }
  m.values = standardize(total, "composite " + spec.name);
  return m;
}

inline CompositeMeasure composite_task_measure(const ElementScores& scores, const std::string& name) {
  return composite_task_measure(scores, task_measure_spec(name));
}

}  // namespace occ2vec
