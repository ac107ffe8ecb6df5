// occ2vec command-line driver.
//
// Exit codes: 0 success, 2 bad input or missing upstream artifact, 3 refusal
// to overwrite an existing output, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "occ2vec/occ2vec.hpp"
#include "occ2vec/remote_embedder.hpp"

namespace fs = std::filesystem;
using namespace occ2vec;

namespace {

struct OverwriteRefused : Error {
  using Error::Error;
};

struct Options {
  std::string onet_dir, catalog, cache, backend = "hash", endpoint, labor_stats, external, out, pairs, scores;
  std::string composite, text_a, text_b;
  std::vector<std::string> characteristics;
  std::size_t dim = 1024;
  std::uint64_t seed = 0;
  bool force = false;
  double perplexity = 30.0, bandwidth = 0.6;
  int iterations = 1000, top = 10;
};

// ---------------------------------------------------------------------------
// plumbing

void require_exists(const std::string& path, const std::string& what, const std::string& stage) {
  if (path.empty()) throw InputError(what + " not given");
  if (!fs::exists(path)) {
    std::string msg = what + " not found: " + path;
    if (!stage.empty()) msg += " (run `occ2vec " + stage + "` first)";
    throw InputError(msg);
  }
}

// Refuses up front so nothing is written when any target already exists.
void guard_outputs(const std::vector<fs::path>& files, bool force) {
  if (force) return;
  for (const auto& f : files)
    if (fs::exists(f)) throw OverwriteRefused("refusing to overwrite " + f.string() + " (use --force)");
}

fs::path out_dir(const Options& o) {
  fs::path d = o.out.empty() ? fs::path("out") : fs::path(o.out);
  if (fs::exists(d) && !fs::is_directory(d)) throw InputError("--out must be a directory: " + d.string());
  return d;
}

void save(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  binary::write_file(p, content);
  std::printf("wrote %s\n", p.string().c_str());
}

EmbedderConfig embedder_config(const Options& o) {
  EmbedderConfig c;
  if (o.backend == "hash") c.backend = Backend::hash;
  else if (o.backend == "remote") c.backend = Backend::remote;
  else throw InputError("--backend must be hash or remote");
  c.dim = o.dim;
  c.seed = o.seed;
  c.endpoint_url = o.endpoint;
  if (c.endpoint_url.empty())
    if (const char* env = std::getenv("OCC2VEC_ENDPOINT")) c.endpoint_url = env;
  c.validate();
  return c;
}

DescriptorCatalog load_catalog(const Options& o) {
  require_exists(o.catalog, "catalog", "ingest");
  try {
    return read_catalog(o.catalog);
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " (stale or foreign catalog; re-run `occ2vec ingest`)");
  }
}

struct Session {
  std::unique_ptr<Embedder> embedder;
  std::optional<EmbeddingCache> cache;
  std::size_t batch = 32;

  explicit Session(const Options& o, bool cache_required) {
    auto cfg = embedder_config(o);
    batch = cfg.batch_size;
    embedder = make_embedder(cfg);
    if (!o.cache.empty()) {
      if (cache_required) require_exists(o.cache, "embedding cache", "embed");
      cache.emplace(EmbeddingCache::open_write(o.cache, embedder->dim(), embedder->backend_id()));
    }
  }

  std::vector<Vector> embed(const std::vector<std::string>& texts) {
    auto ev = embed_texts(*embedder, texts, cache ? &*cache : nullptr, batch);
    std::vector<Vector> out;
    out.reserve(ev.size());
    for (auto& e : ev) out.push_back(std::move(e.values));
    return out;
  }

  std::vector<Vector> descriptor_vectors(const DescriptorCatalog& c) {
    std::vector<std::string> texts;
    texts.reserve(c.descriptors().size());
    for (const auto& d : c.descriptors()) texts.push_back(d.text);
    return embed(texts);
  }

  Vector characteristic(const CharacteristicDefinition& def) {
    return characteristic_embedding(*embedder, def, cache ? &*cache : nullptr);
  }
};

std::vector<CharacteristicDefinition> load_characteristics(const Options& o) {
  if (o.characteristics.empty()) throw InputError("--characteristic is required");
  std::vector<CharacteristicDefinition> defs;
  std::set<std::string> names;
  for (const auto& p : o.characteristics) {
    require_exists(p, "characteristic file", "");
    defs.push_back(load_characteristic(p));
    if (!names.insert(defs.back().name).second) throw InputError("characteristic '" + defs.back().name + "' given twice");
  }
  return defs;
}

std::string group_label(const Occupation& occ) {
  auto t = major_group_title(occ.major_group);
  return t.empty() ? occ.major_group : std::string(t);
}

std::optional<Education> education_of(const Occupation& occ, const LaborStats* stats) {
  if (stats)
    if (const auto* r = stats->find(occ.soc_code); r && r->education) return r->education;
  return occ.education;
}

// A second per-occupation series: an external CSV or a composite task measure.
struct Comparison {
  std::string label;
  std::map<std::string, double> values;  // soc_code -> value
};

Comparison load_comparison(const Options& o, const DescriptorCatalog& catalog) {
  Comparison c;
  if (!o.composite.empty()) {
    auto m = composite_task_measure(element_scores(catalog), o.composite);
    c.label = "composite " + o.composite;
    for (std::size_t i = 0; i < m.soc_codes.size(); ++i) c.values.emplace(m.soc_codes[i], m.values[i]);
    return c;
  }
  require_exists(o.external, "external measure", "");
  const auto t = csv::read(o.external);
  const auto soc = t.column("soc_code");
  if (!soc) throw InputError(o.external + ": missing column 'soc_code'");
  std::optional<std::size_t> val = t.column("value");
  if (!val)
    for (std::size_t i = 0; i < t.header.size(); ++i)
      if (i != *soc) {
        val = i;
        break;
      }
  if (!val) throw InputError(o.external + ": no value column");
  c.label = t.header[*val];
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    auto code = normalize_soc(r[*soc]);
    if (!code) throw InputError(o.external + ": malformed soc_code on line " + std::to_string(t.lines[i]));
    if (text::trim(r[*val]).empty()) continue;
    auto v = text::to_double(r[*val]);
    if (!v || !std::isfinite(*v)) throw InputError(o.external + ": unparseable value on line " + std::to_string(t.lines[i]));
    if (!c.values.emplace(*code, *v).second) throw InputError(o.external + ": duplicate soc_code " + *code);
  }
  return c;
}

// ---------------------------------------------------------------------------
// commands

int cmd_ingest(const Options& o) {
  if (o.onet_dir.empty()) throw InputError("--onet-dir is required");
  if (!fs::is_directory(o.onet_dir)) throw InputError("O*NET directory not found: " + o.onet_dir);
  if (o.out.empty()) throw InputError("--out is required");
  guard_outputs({o.out}, o.force);
  auto res = ingest_onet_directory(o.onet_dir);
  save(o.out, serialize_catalog(res.catalog));
  const auto& r = res.report;
  std::printf("occupations %zu\ntasks %zu\nattributes %zu\n", r.occupations, r.tasks, r.attributes);
  for (const auto& [cat, n] : r.descriptors_per_category)
    std::printf("  %-20s %zu\n", std::string(to_string(cat)).c_str(), n);
  if (r.dropped_occupations) std::printf("dropped occupations %zu\n", r.dropped_occupations);
  if (r.unrated_tasks) std::printf("unrated tasks %zu\n", r.unrated_tasks);
  return 0;
}

int cmd_embed(const Options& o) {
  auto catalog = load_catalog(o);
  if (o.cache.empty()) throw InputError("--cache is required");
  Session s(o, false);
  const std::size_t before = s.cache->size();
  s.descriptor_vectors(catalog);
  if (!o.characteristics.empty())
    for (const auto& def : load_characteristics(o)) s.characteristic(def);
  std::printf("cache %s: %zu vectors (%zu new), backend %s, dim %zu\n", o.cache.c_str(), s.cache->size(),
              s.cache->size() - before, s.embedder->backend_id().c_str(), s.embedder->dim());
  return 0;
}

int cmd_score(const Options& o) {
  auto catalog = load_catalog(o);
  auto defs = load_characteristics(o);
  const auto dir = out_dir(o);
  std::vector<fs::path> files;
  for (const auto& d : defs) files.push_back(dir / (d.name + ".csv"));
  guard_outputs(files, o.force);

  Session s(o, true);
  const auto occ = embed_occupations(catalog, s.descriptor_vectors(catalog));
  for (std::size_t i = 0; i < defs.size(); ++i) {
    auto table = score_all(occ, s.characteristic(defs[i]), defs[i].name);
    save(files[i], score_table_csv(table));
  }
  return 0;
}

int cmd_validate(const Options& o) {
  const auto dir = out_dir(o);
  const std::vector<fs::path> files = {dir / "validation_pairs.csv", dir / "validation_ttests.csv",
                                       dir / "validation_regressions.csv"};
  guard_outputs(files, o.force);

  std::vector<ValidationPair> pairs;
  if (!o.pairs.empty()) {
    require_exists(o.pairs, "validation pairs", "");
    pairs = read_validation_pairs(o.pairs);
  } else {
    auto catalog = load_catalog(o);
    Session s(o, true);
    const auto vecs = s.descriptor_vectors(catalog);
    const auto occ = embed_occupations(catalog, vecs);
    std::size_t skipped = 0;
    pairs = attribute_estimates(catalog, vecs, occ, &skipped);
    if (skipped) std::printf("skipped %zu attributes with too few or constant ratings\n", skipped);
    if (pairs.empty()) throw InputError("no attribute ratings to validate");
  }

  csv::Writer tt({"comparison", "hypothesis", "rho0", "mean_corr", "t_stat", "p_value", "df", "n_groups", "skipped"});
  for (const auto& [name, g] : {std::pair{"between", between_occupations(pairs)}, std::pair{"within", within_occupations(pairs)}}) {
    const std::string n = std::to_string(g.correlations.size()), sk = std::to_string(g.skipped);
    try {
      const auto zero = stats::t_test_mean(g.correlations, 0.0);
      const auto sweep = stats::rho_sweep(g.correlations);
      const std::string m = csv::fixed(mean(g.correlations));
      tt.row({name, "zero", csv::fixed(0.0, 2), m, csv::fixed(zero.t_stat, 4), csv::fixed(zero.p_value, 4),
              std::to_string(zero.df), n, sk});
      if (sweep.first_not_rejected) {
        const auto& r = sweep.results[static_cast<std::size_t>(std::lround(*sweep.first_not_rejected * 100.0)) - 1];
        tt.row({name, "first_not_rejected", csv::fixed(r.rho0, 2), m, csv::fixed(r.t_stat, 4),
                csv::fixed(r.p_value, 4), std::to_string(r.df), n, sk});
      } else {
        tt.row({name, "first_not_rejected", "", m, "", "", "", n, sk});
      }
    } catch (const Error& e) {
      std::fprintf(stderr, "warning: %s t-tests not computed: %s\n", name, e.what());
      const std::string m = g.correlations.empty() ? "" : csv::fixed(mean(g.correlations));
      tt.row({name, "zero", csv::fixed(0.0, 2), m, "", "", "", n, sk});
      tt.row({name, "first_not_rejected", "", m, "", "", "", n, sk});
    }
  }

  csv::Writer reg({"spec", "occupation_fe", "descriptor_fe", "category_fe", "coefficient", "robust_se", "t_stat",
                   "r2", "adj_r2", "n_obs", "n_params"});
  int col = 0;
  for (const auto& spec : regression_specs()) {
    ++col;
    auto r = regress_onet_on_estimate(pairs, spec);
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    reg.row({std::to_string(col), yn(spec.occupation), yn(spec.descriptor), yn(spec.category),
             csv::fixed(r.coefficient_on_measure), csv::fixed(r.robust_se), csv::fixed(r.t_stat, 4),
             csv::fixed(r.r2), csv::fixed(r.adj_r2), std::to_string(r.n_obs), std::to_string(r.n_params)});
  }

  save(files[0], validation_pairs_csv(pairs));
  save(files[1], tt.str());
  save(files[2], reg.str());
  return 0;
}

int cmd_reduce(const Options& o) {
  auto catalog = load_catalog(o);
  const auto dir = out_dir(o);
  const std::vector<fs::path> files = {dir / "coordinates.csv", dir / "embedding_by_group.svg",
                                       dir / "embedding_by_education.svg"};
  guard_outputs(files, o.force);
  std::optional<LaborStats> stats;
  if (!o.labor_stats.empty()) {
    require_exists(o.labor_stats, "labor statistics", "");
    stats = load_labor_stats(o.labor_stats);
  }

  Session s(o, true);
  const auto occ = embed_occupations(catalog, s.descriptor_vectors(catalog));
  std::vector<Vector> rows;
  for (const auto& e : occ) rows.push_back(e.vector);
  const auto x = dimred::to_matrix(rows);
  const Eigen::Index k = std::min<Eigen::Index>({50, x.rows() - 1, x.cols()});
  const auto pca = dimred::pca_fit_transform(x, k);

  dimred::TsneConfig cfg;
  cfg.perplexity = o.perplexity;
  cfg.iterations = o.iterations;
  cfg.seed = o.seed;
  const auto emb = dimred::tsne(pca.scores, cfg);

  csv::Writer w({"soc_code", "x", "y", "major_group_title", "education"});
  std::vector<std::string> groups, edus;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const auto& oc = catalog.occupations()[i];
    const auto edu = education_of(oc, stats ? &*stats : nullptr);
    groups.push_back(group_label(oc));
    edus.push_back(edu ? std::string(to_string(*edu)) : "Unknown");
    w.row({oc.soc_code, csv::fixed(emb.points[i][0]), csv::fixed(emb.points[i][1]), groups.back(),
           edu ? std::string(to_string(*edu)) : ""});
  }
  std::printf("t-SNE KL: initial %.6f, final %.6f\n", emb.initial_kl, emb.final_kl);
  save(files[0], w.str());
  save(files[1], svg::scatter("Occupation embeddings by major group", emb.points, groups));
  save(files[2], svg::scatter("Occupation embeddings by education", emb.points, edus));
  return 0;
}

int cmd_compare(const Options& o) {
  auto catalog = load_catalog(o);
  auto defs = load_characteristics(o);
  if (defs.size() != 1) throw InputError("compare takes exactly one --characteristic");
  if (o.external.empty() == o.composite.empty()) throw InputError("give exactly one of --external or --composite");
  const auto dir = out_dir(o);
  const fs::path file = dir / (defs[0].name + "_comparison.csv");
  guard_outputs({file}, o.force);

  const auto cmp = load_comparison(o, catalog);
  Session s(o, true);
  const auto occ = embed_occupations(catalog, s.descriptor_vectors(catalog));
  const auto table = score_all(occ, s.characteristic(defs[0]), defs[0].name);
  std::vector<double> ours, theirs;
  for (const auto& r : table.rows)
    if (auto it = cmp.values.find(r.soc_code); it != cmp.values.end()) {
      ours.push_back(r.z_score);
      theirs.push_back(it->second);
    }
  if (ours.size() < 3) throw InputError("fewer than 3 occupations in common with " + cmp.label);
  csv::Writer w({"statistic", "value", "n"});
  const std::string n = std::to_string(ours.size());
  w.row({"pearson", csv::fixed(stats::pearson(ours, theirs)), n});
  w.row({"kendall", csv::fixed(stats::kendall_tau(ours, theirs)), n});
  w.row({"spearman", csv::fixed(stats::spearman(ours, theirs)), n});
  save(file, w.str());
  return 0;
}

int cmd_report(const Options& o) {
  auto catalog = load_catalog(o);
  auto defs = load_characteristics(o);
  require_exists(o.labor_stats, "labor statistics", "");
  auto labor = load_labor_stats(o.labor_stats);
  const auto dir = out_dir(o);
  const bool with_cmp = !o.external.empty() || !o.composite.empty();
  std::vector<fs::path> files;
  for (const auto& d : defs)
    for (const char* suffix : {"_top_bottom.csv", "_by_major_group.csv", "_by_major_group.svg", "_by_education.csv",
                               "_by_education.svg", "_smooth_wage.csv", "_smooth_wage.svg", "_smooth_growth.csv",
                               "_smooth_growth.svg"})
      files.push_back(dir / (d.name + suffix));
  guard_outputs(files, o.force);
  std::optional<Comparison> cmp;
  if (with_cmp) cmp = load_comparison(o, catalog);

  Session s(o, true);
  const auto occ = embed_occupations(catalog, s.descriptor_vectors(catalog));
  std::size_t f = 0;
  for (const auto& def : defs) {
    const auto table = score_all(occ, s.characteristic(def), def.name);

    const std::size_t n_top = std::min<std::size_t>(static_cast<std::size_t>(o.top), table.rows.size());
    const auto [top, bottom] = top_bottom(table, n_top);
    csv::Writer tb({"side", "rank", "soc_code", "title", "z_score"});
    for (std::size_t i = 0; i < top.size(); ++i)
      tb.row({"top", std::to_string(i + 1), top[i].soc_code, top[i].title, csv::fixed(top[i].z_score)});
    for (std::size_t i = 0; i < bottom.size(); ++i)
      tb.row({"bottom", std::to_string(i + 1), bottom[i].soc_code, bottom[i].title, csv::fixed(bottom[i].z_score)});
    save(files[f++], tb.str());

    // Boxplots by major group (code order) and by education (level order).
    auto boxes_csv = [](const std::vector<svg::BoxStats>& boxes) {
      csv::Writer w({"group", "n", "q1", "median", "q3", "whisker_low", "whisker_high", "n_outliers"});
      for (const auto& b : boxes)
        w.row({b.label, std::to_string(b.n), csv::fixed(b.q1), csv::fixed(b.median), csv::fixed(b.q3),
               csv::fixed(b.whisker_low), csv::fixed(b.whisker_high), std::to_string(b.outliers.size())});
      return w.str();
    };
    std::map<std::string, std::vector<double>> by_group;
    std::map<int, std::vector<double>> by_edu;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& oc = catalog.occupations()[i];
      by_group[oc.major_group].push_back(table.rows[i].z_score);
      if (auto e = education_of(oc, &labor)) by_edu[static_cast<int>(*e)].push_back(table.rows[i].z_score);
    }
    std::vector<svg::BoxStats> gboxes, eboxes;
    for (auto& [code, v] : by_group) {
      auto title = major_group_title(code);
      gboxes.push_back(svg::box_stats(title.empty() ? code : std::string(title), v));
    }
    for (auto& [e, v] : by_edu) eboxes.push_back(svg::box_stats(std::string(to_string(static_cast<Education>(e))), v));
    save(files[f++], boxes_csv(gboxes));
    save(files[f++], svg::boxplot(def.name + " by major occupational group", gboxes, "standardized score"));
    save(files[f++], boxes_csv(eboxes));
    save(files[f++], svg::boxplot(def.name + " by education", eboxes, "standardized score"));

    // Smoothed score against wage / growth percentile.
    for (const auto& [label, pick] :
         {std::pair<std::string, std::optional<double> LaborRecord::*>{"wage", &LaborRecord::median_annual_wage},
          std::pair<std::string, std::optional<double> LaborRecord::*>{"growth", &LaborRecord::employment_growth_pct}}) {
      std::vector<double> stat, ours, theirs;
      for (const auto& r : table.rows) {
        const auto* rec = labor.find(r.soc_code);
        if (!rec || !(rec->*pick)) continue;
        if (cmp) {
          auto it = cmp->values.find(r.soc_code);
          if (it == cmp->values.end()) continue;
          theirs.push_back(it->second);
        }
        stat.push_back(*(rec->*pick));
        ours.push_back(r.z_score);
      }
      if (stat.size() < 4) throw InputError("fewer than 4 occupations with " + label + " data");
      const auto pct = stats::percentile_rank(stat);
      const auto fit = stats::local_poly_smooth(pct, ours, 2, o.bandwidth);
      std::optional<stats::SmoothCurve> fit2;
      if (cmp) fit2 = stats::local_poly_smooth(pct, standardize(theirs, cmp->label), 2, o.bandwidth);
      csv::Writer w(cmp ? std::vector<std::string>{"percentile", "fit", "fit_external"}
                        : std::vector<std::string>{"percentile", "fit"});
      svg::Series a{def.name, {}}, b{cmp ? cmp->label : "", {}};
      for (std::size_t i = 0; i < fit.grid_x.size(); ++i) {
        std::vector<std::string> row = {csv::fixed(fit.grid_x[i], 0), csv::fixed(fit.fitted_y[i])};
        a.points.push_back({fit.grid_x[i], fit.fitted_y[i]});
        if (fit2) {
          row.push_back(csv::fixed(fit2->fitted_y[i]));
          b.points.push_back({fit.grid_x[i], fit2->fitted_y[i]});
        }
        w.row(row);
      }
      std::vector<svg::Series> series{a};
      if (fit2) series.push_back(b);
      save(files[f++], w.str());
      save(files[f++], svg::line_chart(def.name + " by " + label + " percentile", series, label + " percentile",
                                       "standardized score"));
    }
  }
  return 0;
}

int cmd_composite(const Options& o) {
  auto catalog = load_catalog(o);
  const fs::path file = out_dir(o) / "task_measures.csv";
  guard_outputs({file}, o.force);
  const auto scores = element_scores(catalog);
  std::vector<CompositeMeasure> m;
  for (const auto& spec : task_measure_specs()) m.push_back(composite_task_measure(scores, spec));
  csv::Writer w({"soc_code", "title", "abstract", "manual", "routine"});
  for (std::size_t i = 0; i < catalog.size(); ++i)
    w.row({catalog.occupations()[i].soc_code, catalog.occupations()[i].title, csv::fixed(m[0].values[i]),
           csv::fixed(m[1].values[i]), csv::fixed(m[2].values[i])});
  save(file, w.str());
  return 0;
}

int cmd_mask_demo(const Options& o) {
  const auto a = text::word_tokens(o.text_a), b = text::word_tokens(o.text_b);
  std::vector<std::string> words(a);
  words.insert(words.end(), b.begin(), b.end());
  const bert::Vocabulary vocab(words);
  const auto seq = bert::tokenize_pair(a, b);
  const auto masked = bert::apply_mlm_mask(seq, vocab, o.seed, 0.3);

  std::printf("vocabulary: %zu tokens\n", vocab.size());
  std::printf("input :");
  for (const auto& t : seq.tokens) std::printf(" %s", t.c_str());
  std::printf("\nmasked:");
  for (const auto& t : masked.tokens) std::printf(" %s", t.c_str());
  std::printf("\n");

  // Toy predictor: logits drawn from the seed; loss under the true token.
  CounterRng rng(o.seed ^ 0x5be0cd19137e2179ULL);
  double total = 0.0;
  for (const auto& m : masked.selected) {
    std::vector<double> logits(vocab.size());
    for (auto& l : logits) l = rng.normal();
    const auto ce = bert::mlm_cross_entropy_from_logits(logits, m.original);
    total += ce.loss;
    std::printf("  position %zu (%s): %s -> %s, loss %.6f\n", bert::position_of(m.position, seq), to_string(m.action),
                vocab.token(m.original).c_str(), vocab.token(m.replacement).c_str(), ce.loss);
  }
  if (masked.selected.empty()) std::printf("no tokens selected\n");
  else std::printf("mean loss %.6f over %zu positions (uniform baseline %.6f)\n", total / masked.selected.size(),
                   masked.selected.size(), std::log(static_cast<double>(vocab.size())));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"occupation embeddings: ingest, embed, score, validate, reduce, compare, report"};
  app.require_subcommand(1);
  Options o;

  auto backend_flags = [&](CLI::App* c) {
    c->add_option("--cache", o.cache, "embedding cache file");
    c->add_option("--backend", o.backend, "hash or remote")->check(CLI::IsMember({"hash", "remote"}));
    c->add_option("--dim", o.dim, "embedding dimension")->check(CLI::Range(2, 65536));
    c->add_option("--endpoint", o.endpoint, "embedding service URL (default: $OCC2VEC_ENDPOINT)");
    c->add_option("--seed", o.seed, "seed for every random choice");
  };
  auto common = [&](CLI::App* c, bool out) {
    c->add_option("--catalog", o.catalog, "catalog written by `ingest`");
    if (out) c->add_option("--out", o.out, "output directory (default ./out)");
    c->add_flag("--force", o.force, "overwrite existing outputs");
  };

  auto* ingest = app.add_subcommand("ingest", "parse an O*NET directory into a catalog");
  ingest->add_option("--onet-dir", o.onet_dir, "O*NET text release directory")->required();
  ingest->add_option("--out", o.out, "catalog file to write")->required();
  ingest->add_flag("--force", o.force, "overwrite an existing catalog");

  auto* embed = app.add_subcommand("embed", "embed every descriptor into the cache");
  common(embed, false);
  backend_flags(embed);
  embed->add_option("--characteristic", o.characteristics, "also embed these definitions");

  auto* score = app.add_subcommand("score", "score occupations on characteristics");
  common(score, true);
  backend_flags(score);
  score->add_option("--characteristic", o.characteristics, "definition file(s)")->required();

  auto* validate = app.add_subcommand("validate", "between/within t-tests and dummy regressions");
  common(validate, true);
  backend_flags(validate);
  validate->add_option("--pairs", o.pairs, "precomputed validation pairs CSV");

  auto* reduce = app.add_subcommand("reduce", "PCA + t-SNE coordinates and scatter plots");
  common(reduce, true);
  backend_flags(reduce);
  reduce->add_option("--labor-stats", o.labor_stats, "labor statistics CSV (education labels)");
  reduce->add_option("--perplexity", o.perplexity, "t-SNE perplexity");
  reduce->add_option("--iterations", o.iterations, "t-SNE iterations")->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand("compare", "correlate a characteristic with another measure");
  common(compare, true);
  backend_flags(compare);
  compare->add_option("--characteristic", o.characteristics, "definition file")->required();
  compare->add_option("--external", o.external, "CSV with soc_code and a value column");
  compare->add_option("--composite", o.composite, "abstract, manual or routine")
      ->check(CLI::IsMember({"abstract", "manual", "routine"}));

  auto* report = app.add_subcommand("report", "top/bottom tables, boxplots and smoothed curves");
  common(report, true);
  backend_flags(report);
  report->add_option("--characteristic", o.characteristics, "definition file(s)")->required();
  report->add_option("--labor-stats", o.labor_stats, "labor statistics CSV")->required();
  report->add_option("--external", o.external, "second measure for the smoothed curves");
  report->add_option("--composite", o.composite, "composite task measure for the smoothed curves")
      ->check(CLI::IsMember({"abstract", "manual", "routine"}));
  report->add_option("--bandwidth", o.bandwidth, "smoother bandwidth in (0, 1]");
  report->add_option("--top", o.top, "rows in the top and bottom tables")->check(CLI::PositiveNumber);

  auto* composite = app.add_subcommand("composite", "abstract / manual / routine task measures");
  common(composite, true);

  auto* mask = app.add_subcommand("mask-demo", "mask a sentence pair and print the MLM loss");
  o.text_a = "workers operate machines that follow precise rules";
  o.text_b = "judges weigh evidence and explain decisions";
  mask->add_option("--first", o.text_a, "first sentence");
  mask->add_option("--second", o.text_b, "second sentence");
  mask->add_option("--seed", o.seed, "masking seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*ingest) return cmd_ingest(o);
    if (*embed) return cmd_embed(o);
    if (*score) return cmd_score(o);
    if (*validate) return cmd_validate(o);
    if (*reduce) return cmd_reduce(o);
    if (*compare) return cmd_compare(o);
    if (*report) return cmd_report(o);
    if (*composite) return cmd_composite(o);
    if (*mask) return cmd_mask_demo(o);
  } catch (const OverwriteRefused& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
