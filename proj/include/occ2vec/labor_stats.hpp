#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "occ2vec/catalog.hpp"
#include "occ2vec/csv.hpp"

namespace occ2vec {

struct LaborRecord {
  std::optional<double> median_annual_wage;     // USD
  std::optional<double> employment_growth_pct;  // percent change over the projection decade
  std::optional<Education> education;
  std::string major_group_title;
  bool in_catalog = true;  // false when the SOC code is not an occupation of the joined catalog
};

/// Per-occupation labor market statistics keyed by O*NET-SOC code.
struct LaborStats {
  std::map<std::string, LaborRecord> records;

  const LaborRecord* find(const std::string& soc) const {
    auto it = records.find(soc);
    return it == records.end() ? nullptr : &it->second;
  }
};

/// Columns: soc_code, median_annual_wage, employment_growth_pct, education,
/// major_group_title. Empty cells mean "absent". SOC codes may be six-digit
/// BLS codes ("19-2011") or O*NET codes ("19-2011.00").
inline LaborStats load_labor_stats(const std::filesystem::path& path) {
  const auto t = csv::read(path);
  const auto col = [&](std::string_view name) {
    auto c = t.column(name);
    if (!c) throw InputError(path.string() + ": missing column '" + std::string(name) + "'");
    return *c;
  };
  const auto c_soc = col("soc_code"), c_wage = col("median_annual_wage"), c_growth = col("employment_growth_pct"),
             c_edu = col("education"), c_group = col("major_group_title");

  LaborStats stats;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const std::string where = path.string() + ": row " + std::to_string(i + 1) + " (line " + std::to_string(t.lines[i]) + ")";
    auto soc = normalize_soc(row[c_soc]);
    if (!soc) throw InputError(where + ": malformed soc_code '" + row[c_soc] + "'");

    auto number = [&](std::size_t c) -> std::optional<double> {
      if (text::trim(row[c]).empty()) return std::nullopt;
      auto v = text::to_double(row[c]);
      if (!v || !std::isfinite(*v)) throw InputError(where + ": unparseable number '" + row[c] + "' in " + t.header[c]);
      return v;
    };

    LaborRecord rec;
    rec.median_annual_wage = number(c_wage);
    if (rec.median_annual_wage && !(*rec.median_annual_wage > 0.0))
      throw InputError(where + ": median_annual_wage must be positive");
    rec.employment_growth_pct = number(c_growth);
    if (!text::trim(row[c_edu]).empty()) {
      rec.education = parse_education(row[c_edu]);
      if (!rec.education) throw InputError(where + ": unknown education '" + row[c_edu] + "'");
    }
    rec.major_group_title = text::clean(row[c_group]);
    if (!stats.records.emplace(*soc, std::move(rec)).second) throw InputError(where + ": duplicate soc_code " + *soc);
  }
  return stats;
}

/// Flag records whose SOC code has no occupation in `catalog`; they are kept.
inline std::size_t flag_unknown(LaborStats& stats, const DescriptorCatalog& catalog) {
  std::size_t unknown = 0;
  for (auto& [soc, rec] : stats.records) {
    rec.in_catalog = catalog.find_occupation(soc).has_value();
    if (!rec.in_catalog) ++unknown;
  }
  return unknown;
}

}  // namespace occ2vec
