#include <ctime>

#include "tracecity/errors.hpp"
#include "tracecity/scene_service.hpp"

namespace tracecity {

using nlohmann::json;

std::string iso_timestamp(std::int64_t epoch_seconds) {
  const auto t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json metrics(const CodeModel& model, ArtefactRef ref) {
  switch (ref.kind) {
    case ArtefactKind::Package: {
      const auto& p = model.package(ref.id);
      return {{"nl", p.nl}, {"classes", p.classes.size()}, {"packages", p.subpackages.size()}};
    }
    case ArtefactKind::Class: {
      const auto& c = model.cls(ref.id);
      return {{"loc", c.loc}, {"noa", c.noa}, {"nom", c.nom()}, {"nl", model.package(c.package).nl}};
    }
    case ArtefactKind::Method: {
      const auto& m = model.method(ref.id);
      return {{"loc", m.loc}, {"arity", m.arity}};
    }
  }
  return json::object();
}

}  // namespace

std::string export_scene(const CityLayout& layout, const CodeModel& model, const SceneOptions& options) {
  json nodes = json::array();
  for (const auto& g : layout.glyphs) {
    nodes.push_back({{"qname", g.qname.str()},
                     {"kind", to_string(g.kind)},
                     {"position", vec(g.position)},
                     {"dims", vec(g.dims)},
                     {"base_color", g.color.hex()},
                     {"parent", g.parent ? json(g.parent->str()) : json(nullptr)},
                     {"detail_level", g.on_demand ? "on_demand" : "always"},
                     {"metrics", metrics(model, g.artefact)}});
  }
  json doc{{"schema_version", kSceneSchemaVersion},
           {"project", model.project()},
           {"generated_at", options.generated_at},
           {"bounds", {{"min", vec(layout.bounds.min)}, {"max", vec(layout.bounds.max)}}},
           {"nodes", std::move(nodes)}};
  return doc.dump(2) + "\n";
}

std::string export_pbis(const ScrumDataset& dataset) {
  json releases = json::array();
  for (const auto& r : dataset.releases()) {
    json sprints = json::array();
    for (const auto& s : r.sprints) {
      json features = json::array();
      for (const auto& f : s.features) {
        features.push_back({{"id", f.id},
                            {"title", f.title},
                            {"category", to_string(f.category)},
                            {"priority", f.priority},
                            {"developer", f.developer}});
      }
      sprints.push_back({{"id", s.id},
                         {"name", s.name},
                         {"number", s.number},
                         {"start", format_date(s.start)},
                         {"end", format_date(s.end)},
                         {"features", std::move(features)}});
    }
    releases.push_back({{"id", r.id}, {"name", r.name}, {"sprints", std::move(sprints)}});
  }
  json doc{{"project", dataset.project()}, {"releases", std::move(releases)}};
  return doc.dump(2) + "\n";
}

std::string format_warnings(const std::vector<DanglingRef>& warnings) {
  std::string out;
  for (const auto& w : warnings) out += "feature " + w.feature_id + ": unresolved qname " + w.qname.str() + "\n";
  return out;
}

std::shared_ptr<const Snapshot> make_snapshot(CodeModel model, ScrumDataset dataset, Palette palette,
                                              SceneOptions options) {
  auto snap = std::make_shared<Snapshot>();
  snap->model = std::move(model);
  snap->dataset = std::move(dataset);
  snap->palette = palette;
  snap->index = build_index(snap->dataset, snap->model);
  snap->warnings = validate_refs(snap->dataset, snap->model);
  snap->layout = layout_city(snap->model, snap->palette);
  snap->scene_json = export_scene(snap->layout, snap->model, options);
  snap->pbis_json = export_pbis(snap->dataset);
  for (std::size_t i = 0; i < snap->layout.glyphs.size(); ++i) snap->glyph_of.emplace(snap->layout.glyphs[i].qname, i);
  return snap;
}

std::shared_ptr<const Snapshot> load_snapshot(const InputPaths& paths, Palette palette, SceneOptions options) {
  auto model = ingest_code_model(read_file(paths.code));
  std::vector<XmlSource> sources;
  for (const auto& p : paths.scrum) sources.push_back({p, read_file(p)});
  auto dataset = parse_scrum_xml(sources);
  return make_snapshot(std::move(model), std::move(dataset), palette, std::move(options));
}

void SceneService::reload(const InputPaths& paths, const Palette& palette, const SceneOptions& options) {
  std::lock_guard lock(reload_mutex_);
  replace(load_snapshot(paths, palette, options));
}

}  // namespace tracecity
