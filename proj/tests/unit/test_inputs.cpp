// Text utilities, CSV, characteristic definition files and labor statistics.

#include <gtest/gtest.h>

#include "occ2vec/characteristic.hpp"
#include "occ2vec/csv.hpp"
#include "occ2vec/labor_stats.hpp"
#include "occ2vec/onet_ingest.hpp"
#include "test_support.hpp"

using namespace occ2vec;
using testsupport::ScratchDir;

TEST(Text, CleanCollapsesWhitespaceKeepsCase) {
  EXPECT_EQ(text::clean("  Operate \t heavy\r\n  Machinery.  "), "Operate heavy Machinery.");
  EXPECT_EQ(text::clean(" \t "), "");
}

TEST(Text, WordTokens) {
  EXPECT_EQ(text::word_tokens("Red-truck, RED truck!"), (std::vector<std::string>{"red", "truck", "red", "truck"}));
  EXPECT_TRUE(text::word_tokens("--- !!").empty());
}

TEST(Text, ToDoubleIsStrict) {
  EXPECT_EQ(text::to_double(" 4.25 ").value(), 4.25);
  EXPECT_EQ(text::to_double("+3").value(), 3.0);
  EXPECT_FALSE(text::to_double("3x"));
  EXPECT_FALSE(text::to_double(""));
  EXPECT_EQ(text::to_double(text::shortest(0.1 + 0.2)).value(), 0.1 + 0.2);
}

TEST(Csv, QuotedFieldsAndLineNumbers) {
  const auto t = csv::parse("a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",2\n", "t");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "x, y");
  EXPECT_EQ(t.rows[0][1], "say \"hi\"");
  EXPECT_EQ(t.rows[1][0], "multi\nline");
  EXPECT_EQ(t.lines[0], 2u);
  EXPECT_EQ(t.lines[1], 4u);
}

TEST(Csv, Errors) {
  EXPECT_THROW(csv::parse("a,b\n1\n", "t"), InputError);
  EXPECT_THROW(csv::parse("a\n\"open\n", "t"), InputError);
  EXPECT_THROW(csv::parse("", "t"), InputError);
}

TEST(Csv, WriterRoundTrip) {
  csv::Writer w({"name", "value"});
  w.row({"comma, inside", "1"});
  w.row({"quote \" inside", csv::fixed(-0.0000001)});
  const auto t = csv::parse(w.str(), "w");
  EXPECT_EQ(t.rows[0][0], "comma, inside");
  EXPECT_EQ(t.rows[1][0], "quote \" inside");
  EXPECT_EQ(t.rows[1][1], "0.000000");
}

// --- characteristic files -------------------------------------------------

TEST(Characteristic, FiveDefinitionsInOrder) {
  const auto c = load_characteristic(testsupport::fixtures() / "charisma.def");
  EXPECT_EQ(c.name, "charisma");
  ASSERT_EQ(c.definitions.size(), 5u);
  ASSERT_EQ(c.source_labels.size(), 5u);
  EXPECT_EQ(std::count(c.source_labels.begin(), c.source_labels.end(), ""), 1);
  for (const auto& d : c.definitions) EXPECT_EQ(d, text::clean(d));
}

TEST(Characteristic, Singleton) {
  const auto c = parse_characteristic("name = x\n[definition]\nsource = s\n    one body\n    continued\n", "x");
  ASSERT_EQ(c.definitions.size(), 1u);
  EXPECT_EQ(c.definitions[0], "one body continued");
  EXPECT_EQ(c.source_labels[0], "s");
}

TEST(Characteristic, Errors) {
  EXPECT_THROW(parse_characteristic("name = x\n", "f"), InputError);
  EXPECT_THROW(parse_characteristic("name = x\n[definition]\nsource = s\n", "f"), InputError);
  EXPECT_THROW(parse_characteristic("[definition]\n  body\n", "f"), InputError);
  EXPECT_THROW(parse_characteristic("name = x\n[definition]\nbody not indented\n", "f"), InputError);
  EXPECT_THROW(load_characteristic("/nonexistent.def"), InputError);
}

// --- labor statistics ------------------------------------------------------

namespace {
LaborStats load_text(const std::string& body) {
  ScratchDir d("labor");
  testsupport::spit(d / "l.csv", "soc_code,median_annual_wage,employment_growth_pct,education,major_group_title\n" + body);
  return load_labor_stats(d / "l.csv");
}
}  // namespace

TEST(LaborStats, PassthroughAndMissing) {
  const auto s = load_text(
      "19-2011.00,114590,5.2,Doctoral or professional degree,Life Physical and Social Science\n"
      "47-2061,,1.0,,\n");
  const auto* a = s.find("19-2011.00");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->median_annual_wage.value(), 114590.0);
  EXPECT_EQ(a->education.value(), Education::Doctoral);
  const auto* b = s.find("47-2061.00");
  ASSERT_TRUE(b);
  EXPECT_FALSE(b->median_annual_wage);
  EXPECT_FALSE(b->education);
}

TEST(LaborStats, Errors) {
  try {
    load_text("19-2011.00,1,1,,\n19-2011.00,abc,1,,\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
  EXPECT_THROW(load_text("19-2011.00,1,1,,\n19-2011,2,1,,\n"), InputError);
  EXPECT_THROW(load_text("19-2011.00,-5,1,,\n"), InputError);
  EXPECT_THROW(load_text("19-2011.00,5,1,Kindergarten,\n"), InputError);
}

TEST(LaborStats, FixtureUnknownCodesFlaggedNotDropped) {
  auto s = load_labor_stats(testsupport::fixtures() / "labor_stats.csv");
  const auto c = parse_onet_tables(testsupport::fixtures() / "onet_mini");
  const auto before = s.records.size();
  EXPECT_GE(flag_unknown(s, c), 1u);
  EXPECT_EQ(s.records.size(), before);
  EXPECT_FALSE(s.find("99-9999.00")->in_catalog);
}
