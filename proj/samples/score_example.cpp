// Score three toy occupations on one characteristic with the hash backend.
//
//   ./score_example

#include <cstdio>

#include "occ2vec/occ2vec.hpp"

using namespace occ2vec;

int main() {
  std::vector<Occupation> occ = {
      {"15-1252.00", "Software Developers", "15", std::nullopt},
      {"47-2061.00", "Construction Laborers", "47", std::nullopt},
      {"29-1141.00", "Registered Nurses", "29", std::nullopt},
  };
  std::vector<Descriptor> desc = {
      {"desc:15-1252.00", Category::Description, "Design and write computer software and programs.", DescriptorKind::description},
      {"desc:47-2061.00", Category::Description, "Dig trenches, carry materials and clean construction sites.", DescriptorKind::description},
      {"desc:29-1141.00", Category::Description, "Assess patients and administer medication and care.", DescriptorKind::description},
  };
  DescriptorCatalog::BundleMap bundles;
  for (std::size_t i = 0; i < occ.size(); ++i) bundles[{i, Category::Description}] = {{i, 1.0, 1.0}};
  auto catalog = DescriptorCatalog::create(occ, desc, bundles);

  HashEmbedder embedder(256, 7);
  std::vector<std::string> texts;
  for (const auto& d : catalog.descriptors()) texts.push_back(d.text);
  std::vector<Vector> vecs;
  for (auto& v : embed_texts(embedder, texts)) vecs.push_back(v.values);
  const auto occupations = embed_occupations(catalog, vecs);

  CharacteristicDefinition programming{"programming", {"Writing and testing computer programs and software."}, {}};
  const auto table = score_all(occupations, characteristic_embedding(embedder, programming), programming.name);
  std::fputs(score_table_csv(table).c_str(), stdout);
}
