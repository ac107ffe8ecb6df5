#include <gtest/gtest.h>

#include <random>

#include "occ2vec/catalog_io.hpp"
#include "occ2vec/onet_ingest.hpp"
#include "test_support.hpp"

using namespace occ2vec;
namespace fs = std::filesystem;
using testsupport::ScratchDir;

namespace {

fs::path onet_mini() { return testsupport::fixtures() / "onet_mini"; }

/// Copy of the fixture directory that a test may mutate.
struct MutableOnet {
  ScratchDir dir{"onet"};
  MutableOnet() { fs::copy(onet_mini(), dir.path(), fs::copy_options::recursive); }
  fs::path file(const std::string& name) const { return dir.path() / name; }
  void append(const std::string& name, const std::string& line) {
    testsupport::spit(file(name), testsupport::slurp(file(name)) + line + "\r\n");
  }
};

std::string error_of(const fs::path& dir) {
  try {
    parse_onet_tables(dir);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

// --- scale and weight arithmetic -------------------------------------------

TEST(NormalizeScale, Examples) {
  EXPECT_DOUBLE_EQ(normalize_scale(3, {"IM", 1, 5}), 0.5);
  EXPECT_DOUBLE_EQ(normalize_scale(1, {"IM", 1, 5}), 0.0);
  EXPECT_NEAR(normalize_scale(4.2, {"LV", 0, 7}), 4.2 / 7.0, 1e-15);
  EXPECT_NEAR(normalize_scale(4.2, {"LV", 0, 7}), 0.6, 1e-15);
}

TEST(NormalizeScale, OutOfRangeCarriesElementId) {
  try {
    normalize_scale(5.5, {"IM", 1, 5}, "1.A.1.a.1");
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("1.A.1.a.1"), std::string::npos);
  }
  EXPECT_THROW(normalize_scale(0.5, {"IM", 1, 5}), RangeError);
  EXPECT_THROW(normalize_scale(1, {"XX", 2, 2}), InputError);
}

TEST(NormalizeScale, MonotoneAndAffineInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10), pos(0.1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    double lo = u(rng), hi = lo + pos(rng);
    std::uniform_real_distribution<double> in(lo, hi);
    double v1 = in(rng), v2 = in(rng);
    if (v1 > v2) std::swap(v1, v2);
    const ScaleSpec s{"S", lo, hi};
    EXPECT_LE(normalize_scale(v1, s), normalize_scale(v2, s));
    const double a = pos(rng), b = u(rng);
    const ScaleSpec t{"S", a * lo + b, a * hi + b};
    const double va = std::clamp(a * v1 + b, t.minimum, t.maximum);
    EXPECT_NEAR(normalize_scale(va, t), normalize_scale(v1, s), 1e-12);
  }
}

TEST(CombineScaleScores, Examples) {
  EXPECT_DOUBLE_EQ(combine_scale_scores(std::vector<double>{0.5}), 0.5);
  EXPECT_DOUBLE_EQ(combine_scale_scores(std::vector<double>{0.2, 0.8}), 0.5);
  EXPECT_NEAR(combine_scale_scores(std::vector<double>{0.1, 0.2, 0.9}), 0.4, 1e-15);
  EXPECT_THROW(combine_scale_scores(std::vector<double>{}), InputError);
  EXPECT_THROW(combine_scale_scores(std::vector<double>{1.2}), RangeError);
}

TEST(NormalizeWeights, Examples) {
  EXPECT_EQ(normalize_weights(std::vector<double>{2, 2}), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(normalize_weights(std::vector<double>{1}), (std::vector<double>{1.0}));
  EXPECT_EQ(normalize_weights(std::vector<double>{0}), (std::vector<double>{1.0}));
  const auto w = normalize_weights(std::vector<double>{1, 2, 5});
  EXPECT_DOUBLE_EQ(w[0], 0.125);
  EXPECT_DOUBLE_EQ(w[1], 0.25);
  EXPECT_DOUBLE_EQ(w[2], 0.625);
}

TEST(NormalizeWeights, AllZeroNamesContext) {
  try {
    normalize_weights(std::vector<double>{0, 0}, "11-1011.00/Tasks");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("11-1011.00/Tasks"), std::string::npos);
  }
  EXPECT_THROW(normalize_weights(std::vector<double>{}), InputError);
  EXPECT_THROW(normalize_weights(std::vector<double>{1, -1}), RangeError);
}

TEST(NormalizeWeights, SumToOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 100);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> raw(1 + trial % 17);
    for (auto& r : raw) r = u(rng);
    const auto w = normalize_weights(raw);
    double s = 0;
    for (double x : w) s += x;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

// --- catalog invariants ----------------------------------------------------

TEST(Catalog, RejectsBrokenInvariants) {
  const std::vector<Descriptor> descs = {{"1.A", Category::Abilities, "Reasoning", DescriptorKind::attribute}};
  auto occ = [](std::string soc) { return Occupation{soc, "T", soc.substr(0, 2), std::nullopt}; };
  DescriptorCatalog::BundleMap ok = {{{0, Category::Abilities}, {{0, 1.0, 0.5}}}};
  EXPECT_NO_THROW(DescriptorCatalog::create({occ("11-1011.00")}, descs, ok));

  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00"), occ("11-1011.00")}, descs, ok), InputError);
  EXPECT_THROW(DescriptorCatalog::create({occ("111011.00")}, descs, ok), InputError);
  EXPECT_THROW(DescriptorCatalog::create({Occupation{"11-1011.00", "T", "12", {}}}, descs, ok), InputError);
  // occupation without bundles
  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00"), occ("13-1011.00")}, descs, ok), InputError);
  // weights not summing to one
  DescriptorCatalog::BundleMap bad = {{{0, Category::Abilities}, {{0, 0.9, 0.5}}}};
  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00")}, descs, bad), InputError);
  // dangling descriptor reference
  DescriptorCatalog::BundleMap dangling = {{{0, Category::Abilities}, {{3, 1.0, 0.5}}}};
  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00")}, descs, dangling), InputError);
  // wrong category
  DescriptorCatalog::BundleMap wrong = {{{0, Category::Skills}, {{0, 1.0, 0.5}}}};
  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00")}, descs, wrong), InputError);
  // empty text
  EXPECT_THROW(DescriptorCatalog::create({occ("11-1011.00")},
                                         {{"1.A", Category::Abilities, "  ", DescriptorKind::attribute}}, ok),
               InputError);
}

TEST(Catalog, SocHelpers) {
  EXPECT_EQ(normalize_soc("19-2011").value(), "19-2011.00");
  EXPECT_EQ(normalize_soc(" 19-2011.01 ").value(), "19-2011.01");
  EXPECT_FALSE(normalize_soc("19-20111"));
  EXPECT_EQ(major_group_title("47"), "Construction and Extraction Occupations");
}

// --- ingest of the bundled fixture -------------------------------------------

TEST(Ingest, FixtureCounts) {
  const auto r = ingest_onet_directory(onet_mini());
  EXPECT_EQ(r.report.occupations, 24u);
  EXPECT_EQ(r.report.attributes, 38u);
  EXPECT_EQ(r.report.tasks, r.catalog.count_kind(DescriptorKind::task));
  EXPECT_EQ(r.catalog.size(), 24u);
  EXPECT_EQ(r.report.dropped_occupations, 1u);
  EXPECT_EQ(r.report.unrated_tasks, 1u);
  EXPECT_FALSE(r.catalog.find_occupation("11-9199.00"));
  EXPECT_EQ(r.catalog.count_kind(DescriptorKind::description), 24u);
}

TEST(Ingest, BundleWeightsSumToOne) {
  const auto c = parse_onet_tables(onet_mini());
  for (const auto& [key, bundle] : c.bundles()) {
    double s = 0;
    for (const auto& wd : bundle) {
      EXPECT_GE(wd.weight, 0.0);
      EXPECT_LT(wd.descriptor, c.descriptors().size());
      EXPECT_EQ(c.descriptors()[wd.descriptor].category, key.category);
      s += wd.weight;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
    if (key.category == Category::Description) {
      ASSERT_EQ(bundle.size(), 1u);
      EXPECT_EQ(bundle[0].weight, 1.0);
    }
  }
}

TEST(Ingest, EveryOccupationHasDescriptionAndGapsAreNoted) {
  const auto c = parse_onet_tables(onet_mini());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(c.bundle(i, Category::Description));
  const auto cashier = c.find_occupation("41-2011.00");
  ASSERT_TRUE(cashier);
  EXPECT_FALSE(c.bundle(*cashier, Category::WorkStyles));
  bool noted = false;
  for (const auto& n : c.notes()) noted |= n.find("41-2011.00 has no WorkStyles") != std::string::npos;
  EXPECT_TRUE(noted);
}

TEST(Ingest, SharedAttributesAndUnitScores) {
  const auto c = parse_onet_tables(onet_mini());
  const auto oral = c.find_attribute("1.A.1.a.1");
  ASSERT_TRUE(oral);
  std::size_t users = 0;
  for (const auto& [key, bundle] : c.bundles())
    for (const auto& wd : bundle) {
      EXPECT_GE(wd.unit_score, 0.0);
      EXPECT_LE(wd.unit_score, 1.0);
      users += wd.descriptor == *oral;
    }
  EXPECT_EQ(users, c.size());
}

TEST(Ingest, AttributeUnitScoreIsMeanOfNormalizedScales) {
  // Construction Laborers, 1.A.1.a.1: IM 1.90 on [1,5] and LV 3.11 on [0,7].
  const auto c = parse_onet_tables(onet_mini());
  const auto occ = c.find_occupation("47-2061.00").value();
  const auto el = c.find_attribute("1.A.1.a.1").value();
  const double expected = ((1.90 - 1.0) / 4.0 + 3.11 / 7.0) / 2.0;
  bool seen = false;
  for (const auto& wd : *c.bundle(occ, Category::Abilities))
    if (wd.descriptor == el) {
      EXPECT_NEAR(wd.unit_score, expected, 1e-12);
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(Ingest, DeterministicSerialization) {
  const auto a = serialize_catalog(parse_onet_tables(onet_mini()));
  const auto b = serialize_catalog(parse_onet_tables(onet_mini()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, 8), "OCAT0001");
}

TEST(CatalogIo, RoundTrip) {
  const auto c = parse_onet_tables(onet_mini());
  ScratchDir tmp("catio");
  write_catalog(c, tmp / "c.bin");
  const auto back = read_catalog(tmp / "c.bin");
  EXPECT_EQ(serialize_catalog(back), serialize_catalog(c));
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back.occupations()[i].soc_code, c.occupations()[i].soc_code);
    EXPECT_EQ(back.occupations()[i].title, c.occupations()[i].title);
  }
  for (const auto& [key, bundle] : c.bundles()) {
    const auto* other = back.bundle(key.occupation, key.category);
    ASSERT_TRUE(other);
    ASSERT_EQ(other->size(), bundle.size());
    for (std::size_t j = 0; j < bundle.size(); ++j) {
      EXPECT_EQ((*other)[j].weight, bundle[j].weight);  // bit-exact
      EXPECT_EQ((*other)[j].unit_score, bundle[j].unit_score);
    }
  }
  EXPECT_EQ(back.notes(), c.notes());
}

TEST(CatalogIo, RejectsCorruption) {
  const auto bytes = serialize_catalog(parse_onet_tables(onet_mini()));
  EXPECT_THROW(deserialize_catalog("OCAT9999" + bytes.substr(8)), InputError);
  EXPECT_THROW(deserialize_catalog(bytes.substr(0, bytes.size() - 5)), InputError);
  EXPECT_THROW(deserialize_catalog(""), InputError);
}

// --- ingest error paths --------------------------------------------------

TEST(IngestErrors, MissingDirectory) {
  EXPECT_NE(error_of("/nonexistent/onet").find("/nonexistent/onet"), std::string::npos);
}

TEST(IngestErrors, MissingFileIsNamed) {
  MutableOnet m;
  fs::remove(m.file("Scales Reference.txt"));
  EXPECT_NE(error_of(m.dir.path()).find("Scales Reference.txt"), std::string::npos);
}

TEST(IngestErrors, MalformedRowGivesLineNumber) {
  MutableOnet m;
  m.append("Skills.txt", "15-1252.00\tonly three\tfields");
  const auto err = error_of(m.dir.path());
  EXPECT_NE(err.find("Skills.txt"), std::string::npos);
  EXPECT_NE(err.find("line"), std::string::npos);
}

TEST(IngestErrors, UnknownElement) {
  MutableOnet m;
  m.append("Skills.txt",
           "15-1252.00\tSoftware Developers\t9.Z.9\tMystery\tIM\tImportance\t3.00\t8\t0.1\t1\t5\tN\tn/a\t07/2020\tAnalyst");
  EXPECT_NE(error_of(m.dir.path()).find("unknown element 9.Z.9"), std::string::npos);
}

TEST(IngestErrors, UnknownOccupation) {
  MutableOnet m;
  m.append("Skills.txt",
           "99-0000.00\tNobody\t2.A.1.a\tReading\tIM\tImportance\t3.00\t8\t0.1\t1\t5\tN\tn/a\t07/2020\tAnalyst");
  EXPECT_NE(error_of(m.dir.path()).find("99-0000.00"), std::string::npos);
}

TEST(IngestErrors, OutOfRangeRating) {
  MutableOnet m;
  const auto path = m.file("Abilities.txt");
  auto s = testsupport::slurp(path);
  const auto pos = s.find("\tIM\tImportance\t1.90\t");
  ASSERT_NE(pos, std::string::npos);
  s.replace(pos, 21, "\tIM\tImportance\t9.90\t");
  testsupport::spit(path, s);
  EXPECT_THROW(parse_onet_tables(m.dir.path()), RangeError);
}

TEST(IngestErrors, DuplicateRating) {
  MutableOnet m;
  const auto s = testsupport::slurp(m.file("Abilities.txt"));
  const auto first = s.find("\r\n") + 2;
  const auto line = s.substr(first, s.find("\r\n", first) - first);
  m.append("Abilities.txt", line);
  EXPECT_NE(error_of(m.dir.path()).find("duplicate"), std::string::npos);
}
