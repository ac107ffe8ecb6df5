#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "occ2vec/catalog.hpp"
#include "occ2vec/embedding.hpp"

namespace occ2vec {

struct OccupationEmbedding {
  std::string soc_code;
  std::string title;
  Vector vector;
  std::map<Category, Vector> category_vectors;
};

/// Weighted sum of the descriptor vectors in one (occupation, category)
/// bundle. `descriptor_vectors` is indexed like catalog.descriptors(); an
/// empty entry means the vector is missing.
inline Vector category_embedding(const DescriptorCatalog& catalog, std::span<const Vector> descriptor_vectors,
                                 std::size_t occupation, Category category) {
  const auto* bundle = catalog.bundle(occupation, category);
  if (!bundle)
    throw InputError("no " + std::string(to_string(category)) + " bundle for occupation " +
                     catalog.occupations().at(occupation).soc_code);
  Vector out;
  for (const auto& wd : *bundle) {
    const auto& d = catalog.descriptors()[wd.descriptor];
    if (wd.descriptor >= descriptor_vectors.size() || descriptor_vectors[wd.descriptor].empty())
      throw InputError("missing embedding for descriptor " + d.element_id);
    const auto& x = descriptor_vectors[wd.descriptor];
    if (out.empty()) out.assign(x.size(), 0.0);
    if (x.size() != out.size()) throw InputError("descriptor " + d.element_id + " has a vector of different dimension");
    for (std::size_t c = 0; c < x.size(); ++c) out[c] += wd.weight * x[c];
  }
  return out;
}

/// Uniform average over the categories present.
inline Vector occupation_embedding(const std::map<Category, Vector>& category_vectors) {
  if (category_vectors.empty()) throw InputError("occupation_embedding: no category vectors");
  const std::size_t dim = category_vectors.begin()->second.size();
  Vector out(dim, 0.0);
  for (const auto& [cat, v] : category_vectors) {
    if (v.size() != dim) throw InputError("occupation_embedding: category vectors differ in dimension");
    for (std::size_t c = 0; c < dim; ++c) out[c] += v[c];
  }
  const double k = static_cast<double>(category_vectors.size());
  for (auto& x : out) x /= k;
  return out;
}

/// Occupation embeddings for every occupation in catalog order.
inline std::vector<OccupationEmbedding> embed_occupations(const DescriptorCatalog& catalog,
                                                          std::span<const Vector> descriptor_vectors) {
  std::vector<OccupationEmbedding> out;
  out.reserve(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    OccupationEmbedding oe;
    oe.soc_code = catalog.occupations()[i].soc_code;
    oe.title = catalog.occupations()[i].title;
    for (Category c : catalog.categories_of(i))
      oe.category_vectors.emplace(c, category_embedding(catalog, descriptor_vectors, i, c));
    oe.vector = occupation_embedding(oe.category_vectors);
    out.push_back(std::move(oe));
  }
  return out;
}

}  // namespace occ2vec
