#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tracecity/qname.hpp"

namespace tracecity {

class CodeModel;

/// Work hours as an exact decimal with three fractional digits. Sums are
/// exact and order-independent.
class Hours {
 public:
  static constexpr std::int64_t kScale = 1000;

  constexpr Hours() = default;
  static constexpr Hours from_millis(std::int64_t millis) { return Hours(millis); }

  /// Accepts `12`, `12.5`, `0.125`; throws SchemaError on anything else.
  static Hours parse(std::string_view text);

  constexpr std::int64_t millis() const noexcept { return millis_; }
  double value() const noexcept { return static_cast<double>(millis_) / kScale; }

  /// Shortest decimal form (`2`, `2.5`, `0.125`).
  std::string to_string() const;

  constexpr Hours& operator+=(Hours other) noexcept {
    millis_ += other.millis_;
    return *this;
  }
  friend constexpr Hours operator+(Hours a, Hours b) noexcept { return a += b; }
  friend constexpr auto operator<=>(Hours, Hours) = default;

 private:
  constexpr explicit Hours(std::int64_t millis) : millis_(millis) {}
  std::int64_t millis_ = 0;
};

using Date = std::chrono::year_month_day;

/// Strict `YYYY-MM-DD`; throws SchemaError.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

enum class EntryType { Remaining, Completed };
enum class Category { NewFeature, BugFix, Enhancement };

std::string_view to_string(EntryType t) noexcept;
std::string_view to_string(Category c) noexcept;

struct WorkEntry {
  QName qname;
  Date date;
  Hours hours;
  EntryType type = EntryType::Remaining;

  friend bool operator==(const WorkEntry&, const WorkEntry&) = default;
};

struct Feature {
  std::string id;
  std::string title;
  std::string description;
  Category category = Category::NewFeature;
  int priority = 0;
  Hours estimate;
  std::string developer;
  std::vector<QName> class_refs;
  std::vector<QName> method_refs;
  std::vector<std::string> tasks;
  std::vector<WorkEntry> work_entries;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct Sprint {
  std::string id;
  std::string name;
  int number = 1;
  Date start;
  Date end;
  std::vector<Feature> features;

  friend bool operator==(const Sprint&, const Sprint&) = default;
};

struct Release {
  std::string id;
  std::string name;
  std::vector<Sprint> sprints;

  friend bool operator==(const Release&, const Release&) = default;
};

/// Location of a feature inside the release/sprint tree.
struct FeatureLocation {
  std::size_t release = 0;
  std::size_t sprint = 0;
  std::size_t feature = 0;

  friend bool operator==(const FeatureLocation&, const FeatureLocation&) = default;
};

/// Releases -> sprints -> features, plus an id index over all features.
class ScrumDataset {
 public:
  ScrumDataset() = default;

  /// Builds the feature index; throws DuplicateFeatureId or SchemaError when
  /// containment invariants are violated.
  ScrumDataset(std::string project, std::vector<Release> releases);

  const std::string& project() const noexcept { return project_; }
  const std::vector<Release>& releases() const noexcept { return releases_; }

  const Feature* find_feature(std::string_view id) const;
  const Sprint* find_sprint(std::string_view id) const;
  const Release* find_release(std::string_view id) const;

  /// Sprint id owning the feature.
  const std::string& sprint_of(std::string_view feature_id) const;

  const std::map<std::string, FeatureLocation, std::less<>>& feature_index() const noexcept {
    return feature_index_;
  }

  std::size_t feature_count() const noexcept { return feature_index_.size(); }

  friend bool operator==(const ScrumDataset& a, const ScrumDataset& b) {
    return a.project_ == b.project_ && a.releases_ == b.releases_;
  }

 private:
  std::string project_;
  std::vector<Release> releases_;
  std::map<std::string, FeatureLocation, std::less<>> feature_index_;
};

/// One XML input: a display name (used in diagnostics) and its bytes.
struct XmlSource {
  std::string name;
  std::string bytes;
};

/// Parses and merges Scrum XML documents in input order. Releases sharing an
/// id are merged by concatenating sprints; features never merge.
///
/// Throws XmlError (with source and line), SchemaError, DuplicateFeatureId.
ScrumDataset parse_scrum_xml(const std::vector<XmlSource>& documents);

/// Canonical form: fixed element order, two-space indent, trailing newline.
std::string serialize_scrum_xml(const ScrumDataset& dataset);

struct DanglingRef {
  std::string feature_id;
  QName qname;

  friend bool operator==(const DanglingRef&, const DanglingRef&) = default;
};

/// One warning per distinct (feature, qname) that the model does not
/// resolve, drawn from class refs, method refs, and work entries.
std::vector<DanglingRef> validate_refs(const ScrumDataset& dataset, const CodeModel& model);

struct SimulationParams {
  int sprints = 1;
  int features_per_sprint = 1;
  std::uint64_t seed = 0;
};

/// Generates a plausible dataset over the model's classes. Deterministic for
/// a fixed seed on every platform. Throws EmptyModel when the model has no
/// classes.
ScrumDataset simulate_scrum(const CodeModel& model, const SimulationParams& params);

}  // namespace tracecity
