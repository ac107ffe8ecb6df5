#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "occ2vec/error.hpp"
#include "occ2vec/text.hpp"

namespace occ2vec {

// ---------------------------------------------------------------------------
// Categories, kinds, education

enum class Category : std::uint8_t {
  Description,
  Tasks,
  Abilities,
  Interests,
  WorkValues,
  WorkStyles,
  Skills,
  Knowledge,
  WorkActivities,
  WorkContext,
};

inline constexpr std::array<Category, 10> kAllCategories = {
    Category::Description, Category::Tasks,      Category::Abilities,  Category::Interests,
    Category::WorkValues,  Category::WorkStyles, Category::Skills,     Category::Knowledge,
    Category::WorkActivities, Category::WorkContext,
};

inline constexpr std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::Description: return "Description";
    case Category::Tasks: return "Tasks";
    case Category::Abilities: return "Abilities";
    case Category::Interests: return "Interests";
    case Category::WorkValues: return "WorkValues";
    case Category::WorkStyles: return "WorkStyles";
    case Category::Skills: return "Skills";
    case Category::Knowledge: return "Knowledge";
    case Category::WorkActivities: return "WorkActivities";
    case Category::WorkContext: return "WorkContext";
  }
  return "?";
}

inline std::optional<Category> parse_category(std::string_view s) noexcept {
  for (Category c : kAllCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

enum class DescriptorKind : std::uint8_t { description, task, attribute };

inline constexpr std::string_view to_string(DescriptorKind k) noexcept {
  switch (k) {
    case DescriptorKind::description: return "description";
    case DescriptorKind::task: return "task";
    case DescriptorKind::attribute: return "attribute";
  }
  return "?";
}

inline std::optional<DescriptorKind> parse_kind(std::string_view s) noexcept {
  for (auto k : {DescriptorKind::description, DescriptorKind::task, DescriptorKind::attribute})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Typical entry-level education, ordered from lowest to highest.
enum class Education : std::uint8_t {
  None,
  HighSchool,
  SomeCollege,
  PostsecondaryNondegree,
  Associate,
  Bachelor,
  Master,
  Doctoral,
};

inline constexpr std::array<std::string_view, 8> kEducationLabels = {
    "No formal educational credential",
    "High school diploma or equivalent",
    "Some college, no degree",
    "Postsecondary nondegree award",
    "Associate's degree",
    "Bachelor's degree",
    "Master's degree",
    "Doctoral or professional degree",
};

inline constexpr std::string_view to_string(Education e) noexcept {
  return kEducationLabels[static_cast<std::size_t>(e)];
}

inline std::optional<Education> parse_education(std::string_view s) noexcept {
  s = text::trim(s);
  for (std::size_t i = 0; i < kEducationLabels.size(); ++i)
    if (kEducationLabels[i] == s) return static_cast<Education>(i);
  return std::nullopt;
}

/// SOC 2018 major group titles keyed by two-digit prefix.
inline std::string_view major_group_title(std::string_view prefix) noexcept {
  static constexpr std::pair<std::string_view, std::string_view> kGroups[] = {
      {"11", "Management Occupations"},
      {"13", "Business and Financial Operations Occupations"},
      {"15", "Computer and Mathematical Occupations"},
      {"17", "Architecture and Engineering Occupations"},
      {"19", "Life, Physical, and Social Science Occupations"},
      {"21", "Community and Social Service Occupations"},
      {"23", "Legal Occupations"},
      {"25", "Educational Instruction and Library Occupations"},
      {"27", "Arts, Design, Entertainment, Sports, and Media Occupations"},
      {"29", "Healthcare Practitioners and Technical Occupations"},
      {"31", "Healthcare Support Occupations"},
      {"33", "Protective Service Occupations"},
      {"35", "Food Preparation and Serving Related Occupations"},
      {"37", "Building and Grounds Cleaning and Maintenance Occupations"},
      {"39", "Personal Care and Service Occupations"},
      {"41", "Sales and Related Occupations"},
      {"43", "Office and Administrative Support Occupations"},
      {"45", "Farming, Fishing, and Forestry Occupations"},
      {"47", "Construction and Extraction Occupations"},
      {"49", "Installation, Maintenance, and Repair Occupations"},
      {"51", "Production Occupations"},
      {"53", "Transportation and Material Moving Occupations"},
      {"55", "Military Specific Occupations"},
  };
  for (const auto& [p, title] : kGroups)
    if (p == prefix) return title;
  return "Unknown Occupations";
}

// ---------------------------------------------------------------------------
// SOC codes

/// "dd-dddd.dd"
inline bool is_onet_soc(std::string_view s) noexcept {
  if (s.size() != 10) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (i == 2) {
      if (c != '-') return false;
    } else if (i == 7) {
      if (c != '.') return false;
    } else if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

/// Accepts "dd-dddd" (BLS) or "dd-dddd.dd" (O*NET) and returns the O*NET form.
inline std::optional<std::string> normalize_soc(std::string_view s) {
  s = text::trim(s);
  std::string out(s);
  if (out.size() == 7) out += ".00";
  if (!is_onet_soc(out)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Domain types

struct Occupation {
  std::string soc_code;
  std::string title;
  std::string major_group;  // first two digits of soc_code
  std::optional<Education> education;
};

struct Descriptor {
  std::string element_id;
  Category category = Category::Description;
  std::string text;
  DescriptorKind kind = DescriptorKind::attribute;
};

struct ScaleSpec {
  std::string scale_id;
  double minimum = 0.0;
  double maximum = 1.0;
};

/// One entry of an (occupation, category) bundle. `weight` is normalized
/// within the bundle; `unit_score` is the combined [0,1] rating the weight was
/// derived from (1 for descriptions) and serves as the O*NET ground truth.
struct WeightedDescriptor {
  std::size_t descriptor = 0;
  double weight = 0.0;
  double unit_score = 0.0;
};

struct BundleKey {
  std::size_t occupation = 0;
  Category category = Category::Description;
  auto operator<=>(const BundleKey&) const = default;
};

inline constexpr double kBundleSumTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Scale and weight arithmetic

/// Map a rating on [minimum, maximum] linearly onto [0, 1].
inline double normalize_scale(double value, const ScaleSpec& spec, std::string_view element_id = {}) {
  if (!(spec.maximum > spec.minimum))
    throw InputError("scale " + spec.scale_id + ": maximum must exceed minimum");
  if (!(value >= spec.minimum && value <= spec.maximum))
    throw RangeError("rating " + text::shortest(value) + " outside scale " + spec.scale_id + " [" +
                     text::shortest(spec.minimum) + ", " + text::shortest(spec.maximum) + "]" +
                     (element_id.empty() ? "" : " for element " + std::string(element_id)));
  return (value - spec.minimum) / (spec.maximum - spec.minimum);
}

/// Uniform average of standardized scale scores.
inline double combine_scale_scores(std::span<const double> unit_scores) {
  if (unit_scores.empty()) throw InputError("combine_scale_scores: no scale scores");
  double sum = 0.0;
  for (double u : unit_scores) {
    if (!(u >= 0.0 && u <= 1.0)) throw RangeError("combine_scale_scores: score outside [0,1]");
    sum += u;
  }
  return std::clamp(sum / static_cast<double>(unit_scores.size()), 0.0, 1.0);
}

/// Scale nonnegative weights to sum to one. A single weight always becomes 1.
inline std::vector<double> normalize_weights(std::span<const double> raw, std::string_view context = {}) {
  const std::string where = context.empty() ? std::string() : " (" + std::string(context) + ")";
  if (raw.empty()) throw InputError("normalize_weights: empty weight list" + where);
  for (double w : raw)
    if (!(w >= 0.0) || !std::isfinite(w)) throw RangeError("normalize_weights: negative or non-finite weight" + where);
  if (raw.size() == 1) return {1.0};
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(sum > 0.0)) throw InputError("normalize_weights: all weights are zero" + where);
  std::vector<double> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [sum](double w) { return w / sum; });
  return out;
}

// ---------------------------------------------------------------------------
// DescriptorCatalog

/// Immutable set of occupations, descriptors and weighted (occupation,
/// category) bundles. Construction validates every invariant.
class DescriptorCatalog {
 public:
  using Bundle = std::vector<WeightedDescriptor>;
  using BundleMap = std::map<BundleKey, Bundle>;

  DescriptorCatalog() = default;

  static DescriptorCatalog create(std::vector<Occupation> occupations, std::vector<Descriptor> descriptors,
                                  BundleMap bundles, std::vector<std::string> notes = {}) {
    DescriptorCatalog c;
    c.occupations_ = std::move(occupations);
    c.descriptors_ = std::move(descriptors);
    c.bundles_ = std::move(bundles);
    c.notes_ = std::move(notes);
    c.validate();
    return c;
  }

  const std::vector<Occupation>& occupations() const noexcept { return occupations_; }
  const std::vector<Descriptor>& descriptors() const noexcept { return descriptors_; }
  const BundleMap& bundles() const noexcept { return bundles_; }
  /// Audit trail of gaps tolerated during construction (dropped categories...).
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  std::size_t size() const noexcept { return occupations_.size(); }

  std::optional<std::size_t> find_occupation(std::string_view soc) const {
    auto it = soc_index_.find(std::string(soc));
    if (it == soc_index_.end()) return std::nullopt;
    return it->second;
  }

  const Bundle* bundle(std::size_t occupation, Category category) const {
    auto it = bundles_.find(BundleKey{occupation, category});
    return it == bundles_.end() ? nullptr : &it->second;
  }

  std::vector<Category> categories_of(std::size_t occupation) const {
    std::vector<Category> out;
    for (auto it = bundles_.lower_bound(BundleKey{occupation, kAllCategories.front()});
         it != bundles_.end() && it->first.occupation == occupation; ++it)
      out.push_back(it->first.category);
    return out;
  }

  std::size_t count_kind(DescriptorKind k) const {
    return static_cast<std::size_t>(
        std::count_if(descriptors_.begin(), descriptors_.end(), [k](const Descriptor& d) { return d.kind == k; }));
  }

  /// Attribute descriptor indices, in catalog order.
  std::vector<std::size_t> attribute_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < descriptors_.size(); ++i)
      if (descriptors_[i].kind == DescriptorKind::attribute) out.push_back(i);
    return out;
  }

  std::optional<std::size_t> find_attribute(std::string_view element_id) const {
    for (std::size_t i = 0; i < descriptors_.size(); ++i)
      if (descriptors_[i].kind == DescriptorKind::attribute && descriptors_[i].element_id == element_id) return i;
    return std::nullopt;
  }

 private:
  void validate() {
    soc_index_.clear();
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
      const auto& o = occupations_[i];
      if (!is_onet_soc(o.soc_code)) throw InputError("catalog: malformed SOC code '" + o.soc_code + "'");
      if (o.major_group != o.soc_code.substr(0, 2))
        throw InputError("catalog: major group of " + o.soc_code + " must be its first two digits");
      if (!soc_index_.emplace(o.soc_code, i).second)
        throw InputError("catalog: duplicate SOC code " + o.soc_code);
    }

    std::set<std::pair<DescriptorKind, std::string>> ids;
    for (const auto& d : descriptors_) {
      if (text::trim(d.text).empty()) throw InputError("catalog: descriptor " + d.element_id + " has empty text");
      if (!ids.emplace(d.kind, d.element_id).second)
        throw InputError("catalog: duplicate " + std::string(to_string(d.kind)) + " id " + d.element_id);
    }

    std::vector<bool> has_bundle(occupations_.size(), false);
    std::vector<std::size_t> description_owner(descriptors_.size(), SIZE_MAX);
    for (const auto& [key, bundle] : bundles_) {
      if (key.occupation >= occupations_.size()) throw InputError("catalog: bundle references unknown occupation");
      const std::string where = occupations_[key.occupation].soc_code + "/" + std::string(to_string(key.category));
      if (bundle.empty()) throw InputError("catalog: empty bundle " + where);
      double sum = 0.0;
      for (const auto& wd : bundle) {
        if (wd.descriptor >= descriptors_.size()) throw InputError("catalog: bundle " + where + " references unknown descriptor");
        const auto& d = descriptors_[wd.descriptor];
        if (d.category != key.category)
          throw InputError("catalog: descriptor " + d.element_id + " filed under wrong category in " + where);
        if (!(wd.weight >= 0.0) || !std::isfinite(wd.weight)) throw InputError("catalog: negative weight in " + where);
        if (d.kind == DescriptorKind::description) {
          auto& owner = description_owner[wd.descriptor];
          if (owner != SIZE_MAX && owner != key.occupation)
            throw InputError("catalog: description " + d.element_id + " shared across occupations");
          owner = key.occupation;
        }
        sum += wd.weight;
      }
      if (std::abs(sum - 1.0) > kBundleSumTolerance)
        throw InputError("catalog: weights of " + where + " sum to " + text::shortest(sum));
      has_bundle[key.occupation] = true;
    }
    for (std::size_t i = 0; i < occupations_.size(); ++i)
      if (!has_bundle[i]) throw InputError("catalog: occupation " + occupations_[i].soc_code + " has no descriptors");
  }

  std::vector<Occupation> occupations_;
  std::vector<Descriptor> descriptors_;
  BundleMap bundles_;
  std::vector<std::string> notes_;
  std::unordered_map<std::string, std::size_t> soc_index_;
};

}  // namespace occ2vec
