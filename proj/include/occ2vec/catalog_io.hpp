#pragma once

// Catalog container: the 8-byte magic "OCAT0001" followed by records, each a
// little-endian u32 byte length and a UTF-8, tab-separated payload whose first
// field names the record type:
//
//   header      <format version> <#occupations> <#descriptors> <#bundle entries> <#notes>
//   occupation  <soc> <title> <major group> <education label or "-">
//   descriptor  <kind> <category> <element id> <text>
//   entry       <occupation index> <category> <descriptor index> <weight> <unit score>
//   note        <text>
//
// Reals are written in shortest round-trip form, so a reload is exact.

#include <charconv>
#include <filesystem>
#include <string>
#include <string_view>

#include "occ2vec/binary.hpp"
#include "occ2vec/catalog.hpp"

namespace occ2vec {

inline constexpr std::string_view kCatalogMagic = "OCAT0001";

namespace detail {

inline void put_record(std::string& out, std::string_view payload) {
  binary::put<std::uint32_t>(out, static_cast<std::uint32_t>(payload.size()));
  out.append(payload);
}

inline std::string join_tab(std::initializer_list<std::string_view> fields) {
  std::string s;
  bool first = true;
  for (auto f : fields) {
    if (!first) s.push_back('\t');
    first = false;
    s.append(f);
  }
  return s;
}

inline std::size_t to_index(std::string_view s, const binary::Reader& r) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) r.fail("bad index '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline std::string serialize_catalog(const DescriptorCatalog& catalog) {
  std::size_t entries = 0;
  for (const auto& [k, b] : catalog.bundles()) entries += b.size();

  std::string out(kCatalogMagic);
  detail::put_record(out, detail::join_tab({"header", "1", std::to_string(catalog.occupations().size()),
                                            std::to_string(catalog.descriptors().size()), std::to_string(entries),
                                            std::to_string(catalog.notes().size())}));
  for (const auto& o : catalog.occupations())
    detail::put_record(out, detail::join_tab({"occupation", o.soc_code, o.title, o.major_group,
                                              o.education ? to_string(*o.education) : "-"}));
  for (const auto& d : catalog.descriptors())
    detail::put_record(out, detail::join_tab({"descriptor", to_string(d.kind), to_string(d.category), d.element_id, d.text}));
  for (const auto& [key, bundle] : catalog.bundles())
    for (const auto& wd : bundle)
      detail::put_record(out, detail::join_tab({"entry", std::to_string(key.occupation), to_string(key.category),
                                                std::to_string(wd.descriptor), text::shortest(wd.weight),
                                                text::shortest(wd.unit_score)}));
  for (const auto& n : catalog.notes()) detail::put_record(out, detail::join_tab({"note", n}));
  return out;
}

inline DescriptorCatalog deserialize_catalog(std::string_view bytes, std::string what = "catalog") {
  binary::Reader r(bytes, std::move(what));
  if (r.take(kCatalogMagic.size()) != kCatalogMagic) r.fail("bad magic (expected OCAT0001)");

  std::vector<Occupation> occupations;
  std::vector<Descriptor> descriptors;
  DescriptorCatalog::BundleMap bundles;
  std::vector<std::string> notes;
  bool have_header = false;
  std::size_t expect[4] = {0, 0, 0, 0};
  std::size_t entries = 0;

  while (!r.done()) {
    const auto len = r.get<std::uint32_t>();
    const auto payload = r.take(len);
    const auto f = text::split(payload, '\t');
    const auto type = f[0];
    auto arity = [&](std::size_t n) {
      if (f.size() != n) r.fail("record '" + std::string(type) + "' has " + std::to_string(f.size()) + " fields");
    };
    if (!have_header) {
      if (type != "header") r.fail("first record must be header");
      arity(6);
      if (f[1] != "1") r.fail("unsupported catalog version " + std::string(f[1]));
      for (int i = 0; i < 4; ++i) expect[i] = detail::to_index(f[2 + i], r);
      have_header = true;
    } else if (type == "occupation") {
      arity(5);
      Occupation o{std::string(f[1]), std::string(f[2]), std::string(f[3]), std::nullopt};
      if (f[4] != "-") {
        o.education = parse_education(f[4]);
        if (!o.education) r.fail("unknown education '" + std::string(f[4]) + "'");
      }
      occupations.push_back(std::move(o));
    } else if (type == "descriptor") {
      arity(5);
      const auto kind = parse_kind(f[1]);
      const auto cat = parse_category(f[2]);
      if (!kind || !cat) r.fail("bad descriptor kind/category");
      descriptors.push_back(Descriptor{std::string(f[3]), *cat, std::string(f[4]), *kind});
    } else if (type == "entry") {
      arity(6);
      const auto cat = parse_category(f[2]);
      const auto w = text::to_double(f[4]);
      const auto u = text::to_double(f[5]);
      if (!cat || !w || !u) r.fail("bad bundle entry");
      bundles[BundleKey{detail::to_index(f[1], r), *cat}].push_back(
          WeightedDescriptor{detail::to_index(f[3], r), *w, *u});
      ++entries;
    } else if (type == "note") {
      arity(2);
      notes.emplace_back(f[1]);
    } else {
      r.fail("unknown record type '" + std::string(type) + "'");
    }
  }
  if (!have_header) r.fail("missing header");
  if (occupations.size() != expect[0] || descriptors.size() != expect[1] || entries != expect[2] ||
      notes.size() != expect[3])
    r.fail("record counts disagree with header");
  return DescriptorCatalog::create(std::move(occupations), std::move(descriptors), std::move(bundles), std::move(notes));
}

inline void write_catalog(const DescriptorCatalog& catalog, const std::filesystem::path& path) {
  binary::write_file(path, serialize_catalog(catalog));
}

inline DescriptorCatalog read_catalog(const std::filesystem::path& path) {
  return deserialize_catalog(binary::read_file(path), path.string());
}

}  // namespace occ2vec
