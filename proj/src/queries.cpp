#include <algorithm>
#include <cctype>

#include "tracecity/errors.hpp"
#include "tracecity/scene_service.hpp"

namespace tracecity {

using nlohmann::json;

namespace {

json qname_list(const QNameSet& set) {
  json out = json::array();
  for (const auto& q : set) out.push_back(q.str());
  return out;
}

std::string_view kind_name(ArtefactKind kind) {
  switch (kind) {
    case ArtefactKind::Package:
      return "package";
    case ArtefactKind::Class:
      return "class";
    case ArtefactKind::Method:
      return "method";
  }
  return "package";
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

Overlay selection_overlay(const TraceIndex& index, const Selection& sel) {
  Overlay overlay;
  overlay.highlight = index.forward(sel);
  for (const auto& q : overlay.highlight) {
    if (auto owner = q.owner_class()) overlay.transparent.insert(*owner);
  }
  return overlay;
}

json overlay_json(const Overlay& overlay, const Palette& palette) {
  json rc = json::object();
  for (const auto& [q, s] : overlay.rc) {
    rc[q.str()] = {{"completed_fraction", s.completed_fraction},
                   {"transparent_fraction", s.transparent_fraction},
                   {"band", static_cast<int>(s.band)},
                   {"color", palette.band_color(s.band).hex()},
                   {"untracked", s.untracked},
                   {"completed_hours", s.completed.value()},
                   {"remaining_hours", s.remaining.value()}};
  }
  return {{"highlight", qname_list(overlay.highlight)},
          {"transparent", qname_list(overlay.transparent)},
          {"rc", std::move(rc)}};
}

json feature_payload(const ScrumDataset& dataset, const TraceIndex& index, const Feature& f) {
  json entries = json::array();
  for (const auto& e : f.work_entries) {
    entries.push_back({{"qname", e.qname.str()},
                       {"date", format_date(e.date)},
                       {"hours", e.hours.value()},
                       {"type", to_string(e.type)}});
  }
  json class_refs = json::array();
  for (const auto& q : f.class_refs) class_refs.push_back(q.str());
  json method_refs = json::array();
  for (const auto& q : f.method_refs) method_refs.push_back(q.str());

  const auto& loc = dataset.feature_index().at(f.id);
  const auto& release = dataset.releases()[loc.release];
  json artefacts = json::array();
  if (auto it = index.forward_map().find(f.id); it != index.forward_map().end()) artefacts = qname_list(it->second);

  return {{"id", f.id},
          {"title", f.title},
          {"description", f.description},
          {"category", to_string(f.category)},
          {"priority", f.priority},
          {"estimate_hours", f.estimate.value()},
          {"developer", f.developer},
          {"tasks", f.tasks},
          {"work_entries", std::move(entries)},
          {"class_refs", std::move(class_refs)},
          {"method_refs", std::move(method_refs)},
          {"sprint", release.sprints[loc.sprint].id},
          {"release", release.id},
          {"artefacts", std::move(artefacts)}};
}

json artefact_detail(const ScrumDataset& dataset, const TraceIndex& index, const CodeModel& model, const QName& q) {
  const auto ref = model.resolve(q);
  if (!ref) throw UnknownQName("unknown qualified name '" + q.str() + "'");

  auto rel = related(index, model, q);
  if (ref->kind == ArtefactKind::Method) {
    const auto& owner = model.cls(model.method(ref->id).owner).qname;
    auto owner_rel = related(index, model, owner);
    rel.co_artefacts.insert(owner_rel.co_artefacts.begin(), owner_rel.co_artefacts.end());
    rel.co_artefacts.erase(q);
  }

  json metrics;
  json extra = json::object();
  switch (ref->kind) {
    case ArtefactKind::Package: {
      const auto& p = model.package(ref->id);
      metrics = {{"nl", p.nl}, {"classes", p.classes.size()}, {"packages", p.subpackages.size()}};
      break;
    }
    case ArtefactKind::Class: {
      const auto& c = model.cls(ref->id);
      metrics = {{"loc", c.loc}, {"noa", c.noa}, {"nom", c.nom()}, {"nl", model.package(c.package).nl}};
      extra["interface"] = c.kind == ClassKind::Interface;
      break;
    }
    case ArtefactKind::Method: {
      const auto& m = model.method(ref->id);
      metrics = {{"loc", m.loc}, {"arity", m.arity}};
      extra["owner"] = model.cls(m.owner).qname.str();
      break;
    }
  }

  json features = json::array();
  for (const auto& id : rel.features) features.push_back(feature_payload(dataset, index, *dataset.find_feature(id)));

  json detail{{"qname", q.str()},
              {"kind", kind_name(ref->kind)},
              {"metrics", std::move(metrics)},
              {"features", std::move(features)},
              {"related", qname_list(rel.co_artefacts)}};
  detail.update(extra);
  return detail;
}

SearchResult search(const CodeModel& model, std::string_view query, SearchMode mode) {
  const auto first = query.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw EmptyQuery("search query is empty");
  const auto last = query.find_last_not_of(" \t\r\n");
  const auto needle = query.substr(first, last - first + 1);

  SearchResult result;
  result.mode = mode;
  if (mode == SearchMode::Exact) {
    QName q{std::string(needle)};
    if (model.resolve(q)) result.matches.push_back(std::move(q));
    return result;
  }
  const auto lowered = lowercase(needle);
  for (auto& q : model.enumerate(KindFilter::All)) {
    if (lowercase(q.str()).find(lowered) != std::string::npos) result.matches.push_back(std::move(q));
  }
  return result;
}

}  // namespace tracecity
