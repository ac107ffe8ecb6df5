#pragma once

// Ingest of O*NET 25.3 style tab-delimited text files into a DescriptorCatalog.
//
// Weight construction, per descriptor and occupation:
//   * every accepted scale rating is mapped onto [0,1] with the bounds from
//     "Scales Reference" and the available scales are averaged uniformly;
//   * frequency (FT) is reported as a distribution over categories 1..7 and is
//     collapsed to its mean category before normalization;
//   * the combined scores are then normalized to sum to one within each
//     (occupation, category) bundle. Descriptions carry weight 1.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "occ2vec/catalog.hpp"
#include "occ2vec/error.hpp"
#include "occ2vec/text.hpp"

namespace occ2vec {

/// Header-addressed view of one tab-delimited file, held in memory.
class TsvTable {
 public:
  static TsvTable load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("missing or unreadable file: " + path.filename().string());
    TsvTable t;
    t.name_ = path.filename().string();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line_no == 1 && text::starts_with(line, "\xEF\xBB\xBF")) line.erase(0, 3);
      if (line_no == 1) {
        for (auto h : text::split(line, '\t')) t.columns_.emplace_back(text::trim(h));
        continue;
      }
      if (text::trim(line).empty()) continue;
      auto fields = text::split(line, '\t');
      if (fields.size() != t.columns_.size())
        throw InputError(t.name_ + ": malformed row at line " + std::to_string(line_no) + " (expected " +
                         std::to_string(t.columns_.size()) + " fields, found " + std::to_string(fields.size()) + ")");
      Row r;
      r.line = line_no;
      for (auto f : fields) r.fields.emplace_back(f);
      t.rows_.push_back(std::move(r));
    }
    if (line_no == 0) throw InputError(t.name_ + ": empty file (no header row)");
    return t;
  }

  struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };

  const std::string& name() const noexcept { return name_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    auto c = column(name);
    if (!c) throw InputError(name_ + ": missing column '" + std::string(name) + "'");
    return *c;
  }

  [[noreturn]] void fail(const Row& r, const std::string& msg) const {
    throw InputError(name_ + ": line " + std::to_string(r.line) + ": " + msg);
  }

  double number(const Row& r, std::size_t col) const {
    auto v = text::to_double(r.fields[col]);
    if (!v || !std::isfinite(*v)) fail(r, "unparseable number '" + r.fields[col] + "' in column '" + columns_[col] + "'");
    return *v;
  }

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

struct AttributeFile {
  std::string_view file;
  Category category;
  std::vector<std::string_view> scales;  // accepted scale ids
};

/// Attribute rating files and the scales that enter their weights.
inline const std::vector<AttributeFile>& attribute_files() {
  static const std::vector<AttributeFile> files = {
      {"Abilities.txt", Category::Abilities, {"IM", "LV"}},
      {"Interests.txt", Category::Interests, {"OI"}},
      {"Work Values.txt", Category::WorkValues, {"EX"}},
      {"Work Styles.txt", Category::WorkStyles, {"IM"}},
      {"Skills.txt", Category::Skills, {"IM", "LV"}},
      {"Knowledge.txt", Category::Knowledge, {"IM", "LV"}},
      {"Work Activities.txt", Category::WorkActivities, {"IM", "LV"}},
      {"Work Context.txt", Category::WorkContext, {"CX", "CT"}},
  };
  return files;
}

inline constexpr std::string_view kTaskScales[] = {"IM", "RT", "FT"};

inline std::vector<std::string> required_onet_files() {
  std::vector<std::string> names = {"Occupation Data.txt", "Task Statements.txt", "Task Ratings.txt",
                                    "Content Model Reference.txt", "Scales Reference.txt"};
  for (const auto& f : attribute_files()) names.emplace_back(f.file);
  return names;
}

struct IngestReport {
  std::size_t occupations = 0;
  std::size_t tasks = 0;
  std::size_t attributes = 0;
  std::map<Category, std::size_t> descriptors_per_category;
  std::size_t dropped_occupations = 0;
  std::size_t dropped_categories = 0;
  std::size_t unrated_tasks = 0;
};

struct IngestResult {
  DescriptorCatalog catalog;
  IngestReport report;
};

namespace detail {

/// Scale ratings gathered for one (occupation, descriptor).
struct RatingAccumulator {
  std::map<std::string, double> point;               // scale -> value
  std::map<std::string, std::pair<double, double>> dist;  // scale -> (sum cat*pct, sum pct)

  double unit_score(const std::map<std::string, ScaleSpec>& scales, const std::string& element) const {
    std::vector<double> units;
    for (const auto& [scale, v] : point) units.push_back(normalize_scale(v, scales.at(scale), element));
    for (const auto& [scale, acc] : dist) {
      if (!(acc.second > 0.0)) continue;
      units.push_back(normalize_scale(acc.first / acc.second, scales.at(scale), element));
    }
    return combine_scale_scores(units);
  }

  bool empty() const noexcept {
    if (!point.empty()) return false;
    for (const auto& [s, acc] : dist)
      if (acc.second > 0.0) return false;
    return true;
  }
};

inline bool is_empty_category(std::string_view s) {
  s = text::trim(s);
  return s.empty() || s == "n/a" || s == "NA";
}

inline bool contains(std::span<const std::string_view> set, std::string_view v) {
  for (auto s : set)
    if (s == v) return true;
  return false;
}

inline std::string soc_of(const TsvTable& t, const TsvTable::Row& r, std::size_t col,
                          const std::map<std::string, std::size_t>& occ) {
  std::string soc(text::trim(r.fields[col]));
  if (!is_onet_soc(soc)) t.fail(r, "malformed O*NET-SOC code '" + soc + "'");
  if (!occ.count(soc)) t.fail(r, "unknown occupation " + soc);
  return soc;
}

inline bool task_id_less(const std::string& a, const std::string& b) {
  const auto na = text::to_double(a), nb = text::to_double(b);
  if (na && nb && *na != *nb) return *na < *nb;
  return a < b;
}

}  // namespace detail

/// Parse a directory of O*NET tables into a catalog plus ingest counts.
inline IngestResult ingest_onet_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("O*NET directory not found: " + dir.string());
  for (const auto& f : required_onet_files())
    if (!fs::exists(dir / f)) throw InputError("missing O*NET file: " + f + " in " + dir.string());

  // Scales.
  std::map<std::string, ScaleSpec> scales;
  {
    const auto t = TsvTable::load(dir / "Scales Reference.txt");
    const auto c_id = t.require("Scale ID"), c_min = t.require("Minimum"), c_max = t.require("Maximum");
    for (const auto& r : t.rows()) {
      ScaleSpec s{std::string(text::trim(r.fields[c_id])), t.number(r, c_min), t.number(r, c_max)};
      if (!(s.maximum > s.minimum)) t.fail(r, "scale " + s.scale_id + " has maximum <= minimum");
      if (!scales.emplace(s.scale_id, s).second) t.fail(r, "duplicate scale " + s.scale_id);
    }
  }

  // Content model element definitions.
  std::map<std::string, std::string> element_text;
  {
    const auto t = TsvTable::load(dir / "Content Model Reference.txt");
    const auto c_id = t.require("Element ID"), c_desc = t.require("Description");
    for (const auto& r : t.rows()) {
      std::string id(text::trim(r.fields[c_id]));
      if (!element_text.emplace(id, text::clean(r.fields[c_desc])).second) t.fail(r, "duplicate element " + id);
    }
  }

  // Occupations.
  struct OccRow {
    std::string title, description;
  };
  std::map<std::string, OccRow> occ_rows;
  std::map<std::string, std::size_t> occ_seen;
  {
    const auto t = TsvTable::load(dir / "Occupation Data.txt");
    const auto c_soc = t.require("O*NET-SOC Code"), c_title = t.require("Title"), c_desc = t.require("Description");
    for (const auto& r : t.rows()) {
      std::string soc(text::trim(r.fields[c_soc]));
      if (!is_onet_soc(soc)) t.fail(r, "malformed O*NET-SOC code '" + soc + "'");
      if (!occ_rows.emplace(soc, OccRow{text::clean(r.fields[c_title]), text::clean(r.fields[c_desc])}).second)
        t.fail(r, "duplicate occupation " + soc);
      occ_seen[soc] = 0;
    }
  }

  // Task statements.
  std::map<std::string, std::string> task_text;
  std::map<std::string, std::set<std::string>> occ_tasks;
  {
    const auto t = TsvTable::load(dir / "Task Statements.txt");
    const auto c_soc = t.require("O*NET-SOC Code"), c_id = t.require("Task ID"), c_task = t.require("Task");
    for (const auto& r : t.rows()) {
      const auto soc = detail::soc_of(t, r, c_soc, occ_seen);
      std::string id(text::trim(r.fields[c_id]));
      std::string body = text::clean(r.fields[c_task]);
      if (id.empty() || body.empty()) t.fail(r, "empty task id or text");
      auto [it, fresh] = task_text.emplace(id, body);
      if (!fresh && it->second != body) t.fail(r, "task " + id + " has conflicting texts");
      occ_tasks[soc].insert(id);
    }
  }

  // Task ratings: (soc, task) -> accumulator.
  std::map<std::pair<std::string, std::string>, detail::RatingAccumulator> task_ratings;
  {
    const auto t = TsvTable::load(dir / "Task Ratings.txt");
    const auto c_soc = t.require("O*NET-SOC Code"), c_id = t.require("Task ID"), c_scale = t.require("Scale ID"),
               c_val = t.require("Data Value");
    const auto c_cat = t.column("Category");
    for (const auto& r : t.rows()) {
      const auto soc = detail::soc_of(t, r, c_soc, occ_seen);
      std::string id(text::trim(r.fields[c_id]));
      if (!task_text.count(id)) t.fail(r, "rating references unknown task " + id);
      if (!occ_tasks[soc].count(id)) t.fail(r, "occupation " + soc + " rates task " + id + " it does not list");
      std::string scale(text::trim(r.fields[c_scale]));
      if (!std::count(std::begin(kTaskScales), std::end(kTaskScales), scale)) continue;
      if (!scales.count(scale)) t.fail(r, "scale " + scale + " missing from Scales Reference");
      const double v = t.number(r, c_val);
      auto& acc = task_ratings[{soc, id}];
      const bool has_cat = c_cat && !detail::is_empty_category(r.fields[*c_cat]);
      if (scale == "FT") {
        if (!has_cat) t.fail(r, "frequency rating without a category");
        const double cat = t.number(r, *c_cat);
        acc.dist[scale].first += cat * v;
        acc.dist[scale].second += v;
      } else if (!has_cat) {
        if (!acc.point.emplace(scale, v).second) t.fail(r, "duplicate " + scale + " rating for task " + id);
      }
    }
  }

  // Attribute ratings: category -> (soc, element) -> accumulator.
  std::map<std::string, Category> element_category;
  std::map<Category, std::map<std::pair<std::string, std::string>, detail::RatingAccumulator>> attr_ratings;
  for (const auto& af : attribute_files()) {
    const auto t = TsvTable::load(dir / std::string(af.file));
    const auto c_soc = t.require("O*NET-SOC Code"), c_el = t.require("Element ID"), c_scale = t.require("Scale ID"),
               c_val = t.require("Data Value");
    const auto c_cat = t.column("Category");
    auto& ratings = attr_ratings[af.category];
    for (const auto& r : t.rows()) {
      const auto soc = detail::soc_of(t, r, c_soc, occ_seen);
      std::string el(text::trim(r.fields[c_el]));
      if (!element_text.count(el)) t.fail(r, "occupation " + soc + " references unknown element " + el);
      std::string scale(text::trim(r.fields[c_scale]));
      if (!detail::contains(af.scales, scale)) continue;
      if (c_cat && !detail::is_empty_category(r.fields[*c_cat])) continue;  // distribution rows of other scales
      if (!scales.count(scale)) t.fail(r, "scale " + scale + " missing from Scales Reference");
      auto [it, fresh] = element_category.emplace(el, af.category);
      if (!fresh && it->second != af.category) t.fail(r, "element " + el + " rated in two categories");
      if (element_text[el].empty()) t.fail(r, "element " + el + " has no definition text");
      if (!ratings[{soc, el}].point.emplace(scale, t.number(r, c_val)).second)
        t.fail(r, "duplicate " + scale + " rating for " + soc + " " + el);
    }
  }

  // Assemble descriptors in a fixed order.
  std::vector<Descriptor> descriptors;
  std::map<std::string, std::size_t> task_index, attr_index;
  std::vector<std::string> task_ids;
  for (const auto& [id, body] : task_text) task_ids.push_back(id);
  std::sort(task_ids.begin(), task_ids.end(), detail::task_id_less);

  IngestReport report;
  std::vector<std::string> notes;
  std::vector<Occupation> occupations;
  DescriptorCatalog::BundleMap bundles;

  // Per-occupation bundles (descriptor indices patched once all descriptors
  // are known, so first collect by key).
  struct Pending {
    std::vector<std::pair<std::string, double>> entries;  // element/task id, unit score
  };
  std::vector<std::pair<std::string, std::map<Category, Pending>>> per_occ;

  for (const auto& [soc, row] : occ_rows) {
    std::map<Category, Pending> cats;
    if (auto it = occ_tasks.find(soc); it != occ_tasks.end()) {
      std::vector<std::string> ids(it->second.begin(), it->second.end());
      std::sort(ids.begin(), ids.end(), detail::task_id_less);
      for (const auto& id : ids) {
        auto rt = task_ratings.find({soc, id});
        if (rt == task_ratings.end() || rt->second.empty()) {
          ++report.unrated_tasks;
          continue;
        }
        cats[Category::Tasks].entries.emplace_back(id, rt->second.unit_score(scales, "task " + id));
      }
    }
    for (const auto& [cat, ratings] : attr_ratings) {
      for (auto it = ratings.lower_bound({soc, std::string()}); it != ratings.end() && it->first.first == soc; ++it)
        cats[cat].entries.emplace_back(it->first.second, it->second.unit_score(scales, it->first.second));
    }
    if (cats.empty()) {
      ++report.dropped_occupations;
      notes.push_back("dropped occupation " + soc + ": no rated tasks or attributes");
      continue;
    }
    if (row.description.empty()) {
      ++report.dropped_occupations;
      notes.push_back("dropped occupation " + soc + ": empty description");
      continue;
    }
    for (Category c : kAllCategories) {
      if (c == Category::Description || cats.count(c)) continue;
      ++report.dropped_categories;
      notes.push_back("occupation " + soc + " has no " + std::string(to_string(c)) + " descriptors");
    }
    per_occ.emplace_back(soc, std::move(cats));
  }

  // Descriptions first, then tasks, then attributes grouped by category.
  for (const auto& [soc, cats] : per_occ) {
    descriptors.push_back(Descriptor{"desc:" + soc, Category::Description, occ_rows[soc].description,
                                     DescriptorKind::description});
  }
  std::set<std::string> used_tasks;
  for (const auto& [soc, cats] : per_occ)
    if (auto it = cats.find(Category::Tasks); it != cats.end())
      for (const auto& [id, u] : it->second.entries) used_tasks.insert(id);
  for (const auto& id : task_ids) {
    if (!used_tasks.count(id)) continue;
    task_index[id] = descriptors.size();
    descriptors.push_back(Descriptor{id, Category::Tasks, task_text[id], DescriptorKind::task});
  }
  for (Category c : kAllCategories) {
    for (const auto& [el, cat] : element_category) {
      if (cat != c) continue;
      attr_index[el] = descriptors.size();
      descriptors.push_back(Descriptor{el, c, element_text[el], DescriptorKind::attribute});
    }
  }

  for (std::size_t i = 0; i < per_occ.size(); ++i) {
    const auto& [soc, cats] = per_occ[i];
    occupations.push_back(Occupation{soc, occ_rows[soc].title, soc.substr(0, 2), std::nullopt});
    bundles[BundleKey{i, Category::Description}] = {WeightedDescriptor{i, 1.0, 1.0}};
    for (const auto& [cat, pending] : cats) {
      std::vector<double> raw;
      for (const auto& e : pending.entries) raw.push_back(e.second);
      const auto w = normalize_weights(raw, soc + "/" + std::string(to_string(cat)));
      auto& b = bundles[BundleKey{i, cat}];
      for (std::size_t j = 0; j < pending.entries.size(); ++j) {
        const auto& id = pending.entries[j].first;
        const std::size_t d = cat == Category::Tasks ? task_index.at(id) : attr_index.at(id);
        b.push_back(WeightedDescriptor{d, w[j], pending.entries[j].second});
      }
    }
  }

  report.occupations = occupations.size();
  report.tasks = task_index.size();
  report.attributes = attr_index.size();
  for (const auto& d : descriptors) ++report.descriptors_per_category[d.category];

  return IngestResult{DescriptorCatalog::create(std::move(occupations), std::move(descriptors), std::move(bundles),
                                                std::move(notes)),
                      report};
}

inline DescriptorCatalog parse_onet_tables(const std::filesystem::path& dir) {
  return ingest_onet_directory(dir).catalog;
}

}  // namespace occ2vec
