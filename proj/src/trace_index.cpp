#include "tracecity/trace_index.hpp"

#include "tracecity/errors.hpp"

namespace tracecity {

std::string_view to_string(SelectionLevel level) noexcept {
  switch (level) {
    case SelectionLevel::Feature:
      return "feature";
    case SelectionLevel::Sprint:
      return "sprint";
    case SelectionLevel::Release:
      return "release";
  }
  return "feature";
}

TraceIndex build_index(const ScrumDataset& dataset, const CodeModel& model) {
  TraceIndex index;
  for (const auto& release : dataset.releases()) {
    auto& release_set = index.release_members_[release.id];
    for (const auto& sprint : release.sprints) {
      auto& sprint_set = index.sprint_members_[sprint.id];
      for (const auto& f : sprint.features) {
        sprint_set.insert(f.id);
        release_set.insert(f.id);

        auto& targets = index.forward_[f.id];
        auto add = [&](const QName& q) {
          if (model.resolve(q)) targets.insert(q);
        };
        if (f.class_refs.empty() && f.method_refs.empty()) {
          for (const auto& e : f.work_entries) add(e.qname);
        } else {
          for (const auto& q : f.class_refs) add(q);
          for (const auto& q : f.method_refs) add(q);
        }
      }
    }
  }

  for (const auto& [id, targets] : index.forward_) {
    for (const auto& q : targets) {
      index.reverse_[q].insert(id);
      if (auto owner = q.owner_class()) index.indexed_methods_[*owner].insert(q);
    }
  }
  return index;
}

IdSet TraceIndex::expand(const Selection& sel) const {
  if (sel.ids.empty()) throw InvalidScope("selection has no ids");
  IdSet features;
  for (const auto& id : sel.ids) {
    switch (sel.level) {
      case SelectionLevel::Feature:
        if (!forward_.contains(id)) throw UnknownId("unknown feature '" + id + "'");
        features.insert(id);
        break;
      case SelectionLevel::Sprint: {
        auto it = sprint_members_.find(id);
        if (it == sprint_members_.end()) throw UnknownId("unknown sprint '" + id + "'");
        features.insert(it->second.begin(), it->second.end());
        break;
      }
      case SelectionLevel::Release: {
        auto it = release_members_.find(id);
        if (it == release_members_.end()) throw UnknownId("unknown release '" + id + "'");
        features.insert(it->second.begin(), it->second.end());
        break;
      }
    }
  }
  return features;
}

QNameSet TraceIndex::forward(const Selection& sel) const {
  QNameSet out;
  for (const auto& id : expand(sel)) {
    const auto& targets = forward_.at(id);
    out.insert(targets.begin(), targets.end());
  }
  return out;
}

IdSet TraceIndex::reverse(const QName& q) const {
  IdSet out;
  if (auto it = reverse_.find(q); it != reverse_.end()) out = it->second;
  if (auto it = indexed_methods_.find(q); it != indexed_methods_.end()) {
    for (const auto& m : it->second) {
      const auto& ids = reverse_.at(m);
      out.insert(ids.begin(), ids.end());
    }
  }
  return out;
}

Related related(const TraceIndex& index, const CodeModel& model, const QName& q) {
  if (!model.resolve(q)) throw UnknownQName("unknown qualified name '" + q.str() + "'");
  Related result;
  result.features = index.reverse(q);
  for (const auto& id : result.features) {
    const auto& targets = index.forward_map().at(id);
    result.co_artefacts.insert(targets.begin(), targets.end());
  }
  result.co_artefacts.erase(q);
  return result;
}

LocalityReport locality_report(const TraceIndex& index, const CodeModel& model, const std::string& feature_id) {
  auto it = index.forward_map().find(feature_id);
  if (it == index.forward_map().end()) throw UnknownId("unknown feature '" + feature_id + "'");

  LocalityReport report;
  report.feature_id = feature_id;
  std::set<PackageId> roots;
  for (const auto& q : it->second) {
    auto cls = model.class_level(q);
    if (!cls) continue;
    const auto& node = model.cls(*cls);
    report.classes.insert(node.qname);
    report.packages.insert(model.package(node.package).qname);
    roots.insert(model.root_of(node.package));
  }
  report.module_count = roots.size();
  return report;
}

}  // namespace tracecity
