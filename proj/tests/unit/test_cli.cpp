// Drives the occ2vec binary on the bundled fixture.

#include <gtest/gtest.h>

#include <map>

#include "occ2vec/csv.hpp"
#include "test_support.hpp"

using namespace occ2vec;
using testsupport::fixtures;
using testsupport::run_cli;
using testsupport::ScratchDir;
namespace fs = std::filesystem;

namespace {

std::string fx(const std::string& name) { return (fixtures() / name).string(); }

/// Catalog plus cache in a scratch directory; the common prefix of most runs.
struct Prepared {
  ScratchDir dir{"cli"};
  std::string catalog = (dir / "catalog.bin").string();
  std::string cache = (dir / "cache.bin").string();
  std::string out = (dir / "out").string();

  Prepared() {
    auto r = run_cli({"ingest", "--onet-dir", fx("onet_mini"), "--out", catalog});
    EXPECT_EQ(r.exit_code, 0) << r.output;
    r = run_cli({"embed", "--catalog", catalog, "--cache", cache, "--dim", "64", "--characteristic", fx("charisma.def"),
                 "--characteristic", fx("routine.def")});
    EXPECT_EQ(r.exit_code, 0) << r.output;
  }
  std::vector<std::string> common() const { return {"--catalog", catalog, "--cache", cache, "--dim", "64", "--out", out}; }
  std::vector<std::string> with(const std::string& cmd, std::vector<std::string> extra) const {
    std::vector<std::string> a = {cmd};
    for (const auto& s : common()) a.push_back(s);
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  }
};

std::vector<double> column(const csv::Table& t, const std::string& name) {
  std::vector<double> out;
  const auto c = t.column(name).value();
  for (const auto& r : t.rows) out.push_back(std::stod(r[c]));
  return out;
}

std::map<std::string, std::string> all_files(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = testsupport::slurp(e.path());
  return out;
}

}  // namespace

TEST(Cli, HelpAndUnknownOption) {
  EXPECT_EQ(run_cli({"--help"}).exit_code, 0);
  EXPECT_EQ(run_cli({"score", "--no-such-flag"}).exit_code, 2);
}

TEST(Cli, MissingOnetDirectory) {
  ScratchDir d("cli");
  const auto r = run_cli({"ingest", "--onet-dir", (d / "nowhere").string(), "--out", (d / "c.bin").string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("not found"), std::string::npos) << r.output;
  EXPECT_FALSE(fs::exists(d / "c.bin"));
}

TEST(Cli, RefusesOverwriteWithoutForce) {
  ScratchDir d("cli");
  const auto out = (d / "c.bin").string();
  EXPECT_EQ(run_cli({"ingest", "--onet-dir", fx("onet_mini"), "--out", out}).exit_code, 0);
  const auto before = testsupport::slurp(out);
  const auto r = run_cli({"ingest", "--onet-dir", fx("onet_mini"), "--out", out});
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("--force"), std::string::npos);
  EXPECT_EQ(run_cli({"ingest", "--onet-dir", fx("onet_mini"), "--out", out, "--force"}).exit_code, 0);
  EXPECT_EQ(testsupport::slurp(out), before);
}

TEST(Cli, MissingStageNamesIt) {
  ScratchDir d("cli");
  auto r = run_cli({"score", "--catalog", (d / "none.bin").string(), "--characteristic", fx("charisma.def")});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("occ2vec ingest"), std::string::npos) << r.output;
  const auto cat = (d / "c.bin").string();
  run_cli({"ingest", "--onet-dir", fx("onet_mini"), "--out", cat});
  r = run_cli({"validate", "--catalog", cat, "--cache", (d / "none.cache").string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("occ2vec embed"), std::string::npos) << r.output;
}

TEST(Cli, ScoresAreStandardized) {
  Prepared p;
  const auto r = run_cli(p.with("score", {"--characteristic", fx("charisma.def")}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto t = csv::read(fs::path(p.out) / "charisma.csv");
  ASSERT_EQ(t.rows.size(), 24u);
  const auto z = column(t, "z_score");
  EXPECT_NEAR(testsupport::mean_of(z), 0.0, 1e-5);
  EXPECT_NEAR(testsupport::sd_of(z), 1.0, 1e-5);
  for (std::size_t i = 1; i < z.size(); ++i) EXPECT_GE(z[i - 1], z[i]);
}

TEST(Cli, ValidateRecoversPlantedPairs) {
  Prepared p;
  std::string pairs = "soc_code,element_id,category,onet_score,estimate\n";
  for (int o = 0; o < 6; ++o)
    for (int e = 0; e < 5; ++e) {
      const double x = std::sin(1.0 + o * 5 + e) * 2.0;
      const auto v = std::to_string(x);
      pairs += "o" + std::to_string(o) + ",e" + std::to_string(e) + "," + (e % 2 ? "Skills" : "Abilities") + "," + v +
               "," + v + "\n";
    }
  testsupport::spit(p.dir / "pairs.csv", pairs);
  const auto r = run_cli(p.with("validate", {"--pairs", (p.dir / "pairs.csv").string()}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto reg = csv::read(fs::path(p.out) / "validation_regressions.csv");
  ASSERT_EQ(reg.rows.size(), 8u);
  for (double c : column(reg, "coefficient")) EXPECT_NEAR(c, 1.0, 1e-6);
  for (double c : column(reg, "adj_r2")) EXPECT_NEAR(c, 1.0, 1e-6);
  const auto tt = csv::read(fs::path(p.out) / "validation_ttests.csv");
  EXPECT_EQ(tt.rows.size(), 4u);
}

TEST(Cli, ValidateFromEmbeddings) {
  Prepared p;
  const auto r = run_cli(p.with("validate", {}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto reg = csv::read(fs::path(p.out) / "validation_regressions.csv");
  EXPECT_EQ(reg.rows.size(), 8u);
  for (double n : column(reg, "n_obs")) EXPECT_GT(n, 100);
}

TEST(Cli, CompareMatchesOracles) {
  Prepared p;
  ASSERT_EQ(run_cli(p.with("score", {"--characteristic", fx("charisma.def")})).exit_code, 0);
  const auto r = run_cli(p.with("compare", {"--characteristic", fx("charisma.def"), "--external", fx("external_routine.csv")}));
  ASSERT_EQ(r.exit_code, 0) << r.output;

  const auto scores = csv::read(fs::path(p.out) / "charisma.csv");
  const auto ext = csv::read(fixtures() / "external_routine.csv");
  std::map<std::string, double> theirs;
  for (const auto& row : ext.rows) theirs[row[0]] = std::stod(row[1]);
  std::vector<double> x, y;
  for (const auto& row : scores.rows)
    if (auto it = theirs.find(row[0]); it != theirs.end()) {
      x.push_back(std::stod(row[2]));  // raw correlation, 6 decimals
      y.push_back(it->second);
    }
  const auto cmp = csv::read(fs::path(p.out) / "charisma_comparison.csv");
  const auto v = column(cmp, "value");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], testsupport::pearson_oracle(x, y), 1e-5);
  EXPECT_NEAR(v[1], testsupport::kendall_oracle(x, y), 1e-6);
  EXPECT_NEAR(v[2], testsupport::spearman_oracle(x, y), 1e-6);
  EXPECT_EQ(cmp.rows[0][2], std::to_string(x.size()));
}

TEST(Cli, CompareWithComposite) {
  Prepared p;
  ASSERT_EQ(run_cli({"composite", "--catalog", p.catalog, "--out", p.out}).exit_code, 0);
  const auto r = run_cli(p.with("compare", {"--characteristic", fx("routine.def"), "--composite", "routine"}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto tm = csv::read(fs::path(p.out) / "task_measures.csv");
  const auto routine = column(tm, "routine");
  EXPECT_NEAR(testsupport::mean_of(routine), 0.0, 1e-5);
  EXPECT_NEAR(testsupport::sd_of(routine), 1.0, 1e-5);
  const auto both = run_cli(p.with("compare", {"--characteristic", fx("routine.def"), "--composite", "routine",
                                               "--external", fx("external_routine.csv"), "--force"}));
  EXPECT_EQ(both.exit_code, 2);
}

TEST(Cli, ReduceAndReportWriteStaticSvg) {
  Prepared p;
  auto r = run_cli(p.with("reduce", {"--labor-stats", fx("labor_stats.csv"), "--perplexity", "5", "--iterations", "250"}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(csv::read(fs::path(p.out) / "coordinates.csv").rows.size(), 24u);
  r = run_cli(p.with("report", {"--characteristic", fx("charisma.def"), "--labor-stats", fx("labor_stats.csv"),
                                "--composite", "routine", "--top", "5"}));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto tb = csv::read(fs::path(p.out) / "charisma_top_bottom.csv");
  EXPECT_EQ(tb.rows.size(), 10u);
  int svgs = 0;
  for (const auto& [name, body] : all_files(p.out))
    if (name.ends_with(".svg")) {
      ++svgs;
      EXPECT_EQ(body.find("<script"), std::string::npos) << name;
      EXPECT_NE(body.find("width=\"1200\" height=\"800\""), std::string::npos) << name;
    }
  EXPECT_GE(svgs, 6);
}

TEST(Cli, MaskDemo) {
  const auto r = run_cli({"mask-demo", "--seed", "4"});
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(run_cli({"mask-demo", "--seed", "4"}).output, r.output);
}

TEST(Cli, PipelineIsByteReproducible) {
  auto run_all = [](Prepared& p) {
    for (const auto& args :
         {p.with("score", {"--characteristic", fx("charisma.def"), "--characteristic", fx("routine.def")}),
          p.with("validate", {}), std::vector<std::string>{"composite", "--catalog", p.catalog, "--out", p.out},
          p.with("reduce", {"--labor-stats", fx("labor_stats.csv"), "--perplexity", "5", "--iterations", "250"}),
          p.with("report", {"--characteristic", fx("charisma.def"), "--labor-stats", fx("labor_stats.csv"),
                            "--external", fx("external_routine.csv")})}) {
      const auto r = run_cli(args);
      ASSERT_EQ(r.exit_code, 0) << args[0] << "\n" << r.output;
    }
  };
  Prepared a, b;
  run_all(a);
  run_all(b);
  EXPECT_EQ(testsupport::slurp(a.catalog), testsupport::slurp(b.catalog));
  EXPECT_EQ(testsupport::slurp(a.cache), testsupport::slurp(b.cache));
  const auto fa = all_files(a.out), fb = all_files(b.out);
  ASSERT_EQ(fa.size(), fb.size());
  for (const auto& [name, body] : fa) EXPECT_TRUE(fb.count(name) && fb.at(name) == body) << name;
  EXPECT_EQ(fa.size(), 18u);  // 2 score, 3 validate, 1 composite, 3 reduce, 9 report
}
