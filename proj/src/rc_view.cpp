#include "tracecity/rc_view.hpp"

#include <cmath>

#include "tracecity/errors.hpp"

namespace tracecity {

Band rc_band(double completed_fraction) {
  if (!(completed_fraction >= 0.0 && completed_fraction <= 1.0)) {
    throw OutOfRange("completed fraction " + std::to_string(completed_fraction) + " outside [0, 1]");
  }
  if (completed_fraction < 0.20) return Band::Band1;
  if (completed_fraction < 0.40) return Band::Band2;
  if (completed_fraction < 0.70) return Band::Band3;
  return Band::Band4;
}

namespace {

void validate_scope(const TraceIndex& index, const RcScope& scope) {
  if (scope.mode == RcMode::Concept) {
    if (!scope.selection) throw InvalidScope("concept mode requires a selection");
    index.expand(*scope.selection);
  }
  if (scope.scale == RcScale::Building && scope.target_classes.empty()) {
    throw InvalidScope("building scale requires target classes");
  }
}

// Features whose entries count; nullopt means all.
std::optional<IdSet> allowed_features(const TraceIndex& index, const RcScope& scope) {
  if (scope.mode == RcMode::Artefact) return std::nullopt;
  return index.expand(*scope.selection);
}

RcState finish(QName q, Hours completed, Hours remaining, std::size_t contributing) {
  RcState s;
  s.qname = std::move(q);
  s.completed = completed;
  s.remaining = remaining;
  s.untracked = contributing == 0;
  const auto total = completed.millis() + remaining.millis();
  if (total > 0) {
    s.completed_fraction = static_cast<double>(completed.millis()) / static_cast<double>(total);
    s.transparent_fraction = static_cast<double>(remaining.millis()) / static_cast<double>(total);
  } else {
    s.completed_fraction = 1.0;
    s.transparent_fraction = 0.0;
  }
  s.band = rc_band(s.completed_fraction);
  return s;
}

ClassId require_class(const CodeModel& model, const QName& q) {
  auto id = model.resolve_class(q);
  if (!id) throw NotAClass("'" + q.str() + "' is not a class");
  return *id;
}

template <class Fn>
void for_each_entry(const ScrumDataset& dataset, const std::optional<IdSet>& allowed, Fn&& fn) {
  for (const auto& r : dataset.releases()) {
    for (const auto& s : r.sprints) {
      for (const auto& f : s.features) {
        if (allowed && !allowed->contains(f.id)) continue;
        for (const auto& e : f.work_entries) fn(e);
      }
    }
  }
}

std::vector<ClassId> scope_classes(const CodeModel& model, const ScrumDataset& dataset,
                                   const std::optional<IdSet>& allowed, const RcScope& scope) {
  std::set<QName> keys;
  if (scope.scale == RcScale::Building) {
    for (const auto& q : scope.target_classes) require_class(model, q);
    keys = scope.target_classes;
  } else {
    for_each_entry(dataset, allowed, [&](const WorkEntry& e) {
      if (auto c = model.class_level(e.qname)) keys.insert(model.cls(*c).qname);
    });
  }
  std::vector<ClassId> ids;
  ids.reserve(keys.size());
  for (const auto& q : keys) ids.push_back(*model.resolve_class(q));
  return ids;
}

}  // namespace

RcState rc_class(const TraceIndex& index, const ScrumDataset& dataset, const CodeModel& model, const QName& q,
                 const RcScope& scope) {
  const auto cls = require_class(model, q);
  if (scope.mode == RcMode::Concept) {
    if (!scope.selection) throw InvalidScope("concept mode requires a selection");
  }
  const auto allowed = allowed_features(index, scope);
  Hours completed;
  Hours remaining;
  std::size_t contributing = 0;
  for_each_entry(dataset, allowed, [&](const WorkEntry& e) {
    if (model.class_level(e.qname) != cls) return;
    (e.type == EntryType::Completed ? completed : remaining) += e.hours;
    ++contributing;
  });
  return finish(q, completed, remaining, contributing);
}

std::map<QName, RcState> rc_map_serial(const TraceIndex& index, const ScrumDataset& dataset,
                                       const CodeModel& model, const RcScope& scope) {
  validate_scope(index, scope);
  const auto allowed = allowed_features(index, scope);
  std::map<QName, RcState> out;
  for (auto c : scope_classes(model, dataset, allowed, scope)) {
    const auto& q = model.cls(c).qname;
    out.emplace(q, rc_class(index, dataset, model, q, scope));
  }
  return out;
}

std::map<QName, RcState> rc_map(const TraceIndex& index, const ScrumDataset& dataset, const CodeModel& model,
                                const RcScope& scope) {
  validate_scope(index, scope);
  const auto allowed = allowed_features(index, scope);
  const auto classes = scope_classes(model, dataset, allowed, scope);

  // Bucket contributing entries by class (CSR layout), then sum per class.
  struct Contribution {
    ClassId cls;
    const WorkEntry* entry;
  };
  std::vector<Contribution> contributions;
  for_each_entry(dataset, allowed, [&](const WorkEntry& e) {
    if (auto c = model.class_level(e.qname)) contributions.push_back({*c, &e});
  });
  std::vector<std::size_t> offsets(model.classes().size() + 1, 0);
  for (const auto& c : contributions) ++offsets[c.cls + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<const WorkEntry*> bucketed(contributions.size());
  {
    auto cursor = offsets;
    for (const auto& c : contributions) bucketed[cursor[c.cls]++] = c.entry;
  }

  std::vector<RcState> states(classes.size());
  const auto n = static_cast<std::ptrdiff_t>(classes.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto c = classes[static_cast<std::size_t>(i)];
    Hours completed;
    Hours remaining;
    for (auto k = offsets[c]; k < offsets[c + 1]; ++k) {
      const auto* e = bucketed[k];
      (e->type == EntryType::Completed ? completed : remaining) += e->hours;
    }
    states[static_cast<std::size_t>(i)] =
        finish(model.cls(c).qname, completed, remaining, offsets[c + 1] - offsets[c]);
  }

  std::map<QName, RcState> out;
  for (auto& s : states) {
    auto key = s.qname;
    out.emplace(std::move(key), std::move(s));
  }
  return out;
}

}  // namespace tracecity
