#include <optional>

#include "tracecity/errors.hpp"
#include "tracecity/scene_service.hpp"

namespace tracecity {

using nlohmann::json;

namespace {

constexpr std::string_view kArtifactPrefix = "/api/artifact/";
constexpr std::string_view kFeaturePrefix = "/api/feature/";
constexpr std::string_view kFeaturesSuffix = "/features";

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ApiResponse ok(const json& body) { return {200, body.dump() + "\n"}; }

ApiResponse error(int status, std::string_view kind, std::string_view detail) {
  return {status, json{{"error", kind}, {"detail", detail}}.dump() + "\n"};
}

std::optional<std::string> param(const QueryParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

std::string required(const QueryParams& params, const std::string& key) {
  auto value = param(params, key);
  if (!value || value->empty()) throw BadRequest("missing query parameter '" + key + "'");
  return *value;
}

// Repeated keys and comma-separated values both work: ?id=a&id=b or ?id=a,b
std::vector<std::string> multi(const QueryParams& params, const std::string& key) {
  std::vector<std::string> out;
  auto [lo, hi] = params.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    std::size_t start = 0;
    const auto& v = it->second;
    while (start <= v.size()) {
      const auto comma = v.find(',', start);
      const auto part = v.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) out.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

SelectionLevel parse_level(const std::string& text) {
  if (text == "feature") return SelectionLevel::Feature;
  if (text == "sprint") return SelectionLevel::Sprint;
  if (text == "release") return SelectionLevel::Release;
  throw BadRequest("level must be feature, sprint, or release");
}

Selection parse_selection(const QueryParams& params) {
  Selection sel;
  sel.level = parse_level(required(params, "level"));
  for (auto& id : multi(params, "id")) sel.ids.insert(std::move(id));
  if (sel.ids.empty()) throw BadRequest("missing query parameter 'id'");
  return sel;
}

json glyph_target(const Snapshot& snap, const QName& q) {
  json target{{"qname", q.str()}};
  if (auto it = snap.glyph_of.find(q); it != snap.glyph_of.end()) {
    const auto& g = snap.layout.glyphs[it->second];
    target["position"] = {g.position.x, g.position.y, g.position.z};
    target["dims"] = {g.dims.x, g.dims.y, g.dims.z};
  }
  return target;
}

ApiResponse route(const Snapshot& snap, std::string_view path, const QueryParams& params) {
  if (path == "/api/scene") return {200, snap.scene_json};
  if (path == "/api/pbis") return {200, snap.pbis_json};

  if (path == "/api/warnings") {
    json list = json::array();
    for (const auto& w : snap.warnings) list.push_back({{"feature", w.feature_id}, {"qname", w.qname.str()}});
    return ok({{"warnings", std::move(list)}});
  }

  if (path.starts_with(kFeaturePrefix)) {
    const std::string id(path.substr(kFeaturePrefix.size()));
    const auto* f = snap.dataset.find_feature(id);
    if (!f) throw NotFound("unknown feature '" + id + "'");
    return ok(feature_payload(snap.dataset, snap.index, *f));
  }

  if (path == "/api/select") {
    const auto overlay = selection_overlay(snap.index, parse_selection(params));
    return ok(overlay_json(overlay, snap.palette));
  }

  if (path.starts_with(kArtifactPrefix)) {
    auto rest = path.substr(kArtifactPrefix.size());
    // Method qnames end in a numeric arity, so the suffix is unambiguous.
    const bool features_only = rest.ends_with(kFeaturesSuffix);
    if (features_only) rest.remove_suffix(kFeaturesSuffix.size());
    const QName q{std::string(rest)};
    if (!snap.model.resolve(q)) throw NotFound("unknown qualified name '" + q.str() + "'");
    if (!features_only) return ok(artefact_detail(snap.dataset, snap.index, snap.model, q));
    json list = json::array();
    for (const auto& id : snap.index.reverse(q)) {
      const auto* f = snap.dataset.find_feature(id);
      list.push_back({{"id", f->id}, {"title", f->title}, {"category", to_string(f->category)}});
    }
    return ok({{"qname", q.str()}, {"features", std::move(list)}});
  }

  if (path == "/api/rc") {
    RcScope scope;
    const auto mode = param(params, "mode").value_or("artefact");
    if (mode == "artefact" || mode == "artifact") {
      scope.mode = RcMode::Artefact;
    } else if (mode == "concept") {
      scope.mode = RcMode::Concept;
      scope.selection = parse_selection(params);
    } else {
      throw BadRequest("mode must be artefact or concept");
    }
    const auto scale = param(params, "scale").value_or("city");
    if (scale == "city") {
      scope.scale = RcScale::City;
    } else if (scale == "building") {
      scope.scale = RcScale::Building;
      for (auto& t : multi(params, "target")) {
        QName q{std::move(t)};
        if (!snap.model.resolve(q)) throw NotFound("unknown qualified name '" + q.str() + "'");
        scope.target_classes.insert(std::move(q));
      }
      if (scope.target_classes.empty()) throw BadRequest("building scale needs at least one target");
    } else {
      throw BadRequest("scale must be city or building");
    }
    Overlay overlay;
    overlay.rc = rc_map(snap.index, snap.dataset, snap.model, scope);
    auto body = overlay_json(overlay, snap.palette);
    body["mode"] = scope.mode == RcMode::Concept ? "concept" : "artefact";
    body["scale"] = scale;
    return ok(body);
  }

  if (path == "/api/search") {
    const auto mode_text = param(params, "mode").value_or("exact");
    SearchMode mode;
    if (mode_text == "exact") {
      mode = SearchMode::Exact;
    } else if (mode_text == "all") {
      mode = SearchMode::All;
    } else {
      throw BadRequest("mode must be exact or all");
    }
    const auto query = param(params, "q").value_or("");
    const auto result = search(snap.model, query, mode);
    json matches = json::array();
    json targets = json::array();
    for (const auto& q : result.matches) {
      matches.push_back(q.str());
      targets.push_back(glyph_target(snap, q));
    }
    return ok({{"mode", mode_text}, {"query", query}, {"matches", std::move(matches)}, {"targets", std::move(targets)}});
  }

  throw NotFound("no route for '" + std::string(path) + "'");
}

}  // namespace

ApiResponse handle_api(const Snapshot& snapshot, std::string_view path, const QueryParams& params) {
  try {
    return route(snapshot, path, params);
  } catch (const BadRequest& e) {
    return error(400, "bad_request", e.what());
  } catch (const EmptyQuery& e) {
    return error(400, "bad_request", e.what());
  } catch (const InvalidScope& e) {
    return error(400, "bad_request", e.what());
  } catch (const NotFound& e) {
    return error(404, "not_found", e.what());
  } catch (const UnknownId& e) {
    return error(404, "not_found", e.what());
  } catch (const UnknownQName& e) {
    return error(404, "not_found", e.what());
  } catch (const NotAClass& e) {
    return error(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
}

}  // namespace tracecity
