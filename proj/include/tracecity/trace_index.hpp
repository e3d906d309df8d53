#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tracecity/code_model.hpp"
#include "tracecity/scrum_data.hpp"

namespace tracecity {

enum class SelectionLevel { Feature, Sprint, Release };

std::string_view to_string(SelectionLevel level) noexcept;

struct Selection {
  SelectionLevel level = SelectionLevel::Feature;
  std::set<std::string> ids;
};

using QNameSet = std::set<QName>;
using IdSet = std::set<std::string>;

/// Bidirectional feature <-> artefact map. Immutable after `build_index`.
class TraceIndex {
 public:
  const std::map<std::string, QNameSet>& forward_map() const noexcept { return forward_; }
  const std::map<QName, IdSet>& reverse_map() const noexcept { return reverse_; }
  const std::map<std::string, IdSet>& sprint_members() const noexcept { return sprint_members_; }
  const std::map<std::string, IdSet>& release_members() const noexcept { return release_members_; }

  /// Feature ids covered by a selection. Throws UnknownId.
  IdSet expand(const Selection& sel) const;

  /// Union of forward sets over the selection. Throws UnknownId.
  QNameSet forward(const Selection& sel) const;

  /// Features linked to q; a class also collects features of its methods.
  IdSet reverse(const QName& q) const;

  friend TraceIndex build_index(const ScrumDataset& dataset, const CodeModel& model);

 private:
  std::map<std::string, QNameSet> forward_;
  std::map<QName, IdSet> reverse_;
  std::map<std::string, IdSet> sprint_members_;
  std::map<std::string, IdSet> release_members_;
  std::map<QName, QNameSet> indexed_methods_;  // class -> its methods present in reverse_
};

/// Builds the index. Refs the model cannot resolve are left out; work-entry
/// qnames are used only when a feature has no class or method refs at all.
TraceIndex build_index(const ScrumDataset& dataset, const CodeModel& model);

struct Related {
  IdSet features;
  QNameSet co_artefacts;
};

/// Features of q and every other artefact those features touch. Throws
/// UnknownQName when q is not in the model.
Related related(const TraceIndex& index, const CodeModel& model, const QName& q);

struct LocalityReport {
  std::string feature_id;
  QNameSet classes;
  QNameSet packages;
  std::size_t module_count = 0;
};

/// Spatial spread of a feature: its classes (methods folded into owners),
/// their packages, and the number of distinct root packages. Throws UnknownId.
LocalityReport locality_report(const TraceIndex& index, const CodeModel& model, const std::string& feature_id);

}  // namespace tracecity
