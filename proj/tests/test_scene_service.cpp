#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>

#include "support/oracles.hpp"
#include "tracecity/errors.hpp"
#include "tracecity/scene_service.hpp"

namespace tracecity {
namespace {

using nlohmann::json;

std::shared_ptr<const Snapshot> storehouse() {
  return load_snapshot({testing::fixture_path("storehouse.code.json"), {testing::fixture_path("storehouse.scrum.xml")}});
}

TEST(SceneExport, EmptyModelHasNoNodes) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": []})");
  const auto doc = json::parse(export_scene(layout_city(model), model));
  EXPECT_EQ(doc["schema_version"], kSceneSchemaVersion);
  EXPECT_TRUE(doc["nodes"].empty());
  EXPECT_EQ(doc["generated_at"], "1970-01-01T00:00:00Z");
}

TEST(SceneExport, OneClassModel) {
  const auto model = ingest_code_model(R"({"project": "demo", "packages": [{"name": "app", "packages": [],
    "classes": [{"name": "Main", "kind": "class", "loc": 30, "noa": 1,
                 "methods": [{"name": "run", "arity": 0, "loc": 20}]}]}]})");
  const auto doc = json::parse(export_scene(layout_city(model), model, {"2024-05-01T12:00:00Z"}));
  ASSERT_EQ(doc["nodes"].size(), 3u);
  EXPECT_EQ(doc["generated_at"], "2024-05-01T12:00:00Z");
  EXPECT_EQ(doc["nodes"][0]["kind"], "platform");
  EXPECT_TRUE(doc["nodes"][0]["parent"].is_null());
  EXPECT_EQ(doc["nodes"][1]["kind"], "building");
  EXPECT_EQ(doc["nodes"][1]["metrics"]["nom"], 1);
  EXPECT_EQ(doc["nodes"][2]["kind"], "method_cube");
  EXPECT_EQ(doc["nodes"][2]["detail_level"], "on_demand");
  EXPECT_EQ(doc["nodes"][2]["parent"], "app.Main");
}

TEST(SceneExport, ByteStable) {
  const auto a = storehouse();
  const auto b = storehouse();
  EXPECT_EQ(a->scene_json, b->scene_json);
  EXPECT_EQ(a->pbis_json, b->pbis_json);
  EXPECT_EQ(iso_timestamp(0), "1970-01-01T00:00:00Z");
  EXPECT_EQ(iso_timestamp(1700000000), "2023-11-14T22:13:20Z");
}

TEST(PbisExport, ReleaseSprintFeatureTree) {
  const auto doc = json::parse(storehouse()->pbis_json);
  EXPECT_EQ(doc["project"], "storehouse");
  ASSERT_EQ(doc["releases"].size(), 2u);
  EXPECT_EQ(doc["releases"][0]["sprints"][0]["features"][0]["id"], "F1");
  EXPECT_EQ(doc["releases"][0]["sprints"][0]["features"][0]["category"], "new");
  EXPECT_TRUE(doc["releases"][1]["sprints"][0]["features"].empty());
}

TEST(Overlay, MethodSelectionGhostsOwner) {
  const auto snap = storehouse();
  const auto o = selection_overlay(snap->index, {SelectionLevel::Feature, {"F4"}});
  EXPECT_EQ(o.highlight, QNameSet{QName("db.storage.Memtable#flush/0")});
  EXPECT_EQ(o.transparent, QNameSet{QName("db.storage.Memtable")});
  const auto f1 = selection_overlay(snap->index, {SelectionLevel::Feature, {"F1"}});
  EXPECT_EQ(f1.highlight.size(), 8u);
  EXPECT_EQ(f1.transparent, QNameSet{QName("db.cache.CacheService")});
}

TEST(Detail, FeaturePayload) {
  const auto snap = storehouse();
  const auto p = feature_payload(snap->dataset, snap->index, *snap->dataset.find_feature("F6"));
  EXPECT_EQ(p["sprint"], "S2");
  EXPECT_EQ(p["release"], "R1");
  EXPECT_EQ(p["estimate_hours"], 6);
  EXPECT_EQ(p["artefacts"], json::array({"net.Server"}));
  EXPECT_EQ(p["class_refs"], json::array({"net.Server", "net.LegacyProtocol"}));
}

TEST(Detail, MethodRelatedIncludesOwnerContext) {
  const auto snap = storehouse();
  const auto d = artefact_detail(snap->dataset, snap->index, snap->model, QName("db.storage.Memtable#flush/0"));
  EXPECT_EQ(d["kind"], "method");
  EXPECT_EQ(d["owner"], "db.storage.Memtable");
  ASSERT_EQ(d["features"].size(), 1u);
  EXPECT_EQ(d["features"][0]["id"], "F4");

  const auto get = artefact_detail(snap->dataset, snap->index, snap->model, QName("db.cache.CacheService#get/1"));
  const auto& related = get["related"];
  EXPECT_NE(std::find(related.begin(), related.end(), "db.cache.Evictor"), related.end());
  EXPECT_EQ(std::find(related.begin(), related.end(), "db.cache.CacheService#get/1"), related.end());

  const auto iface = artefact_detail(snap->dataset, snap->index, snap->model, QName("util.Clock"));
  EXPECT_EQ(iface["interface"], true);
  EXPECT_THROW(artefact_detail(snap->dataset, snap->index, snap->model, QName("util.Nope")), UnknownQName);
}

TEST(Search, ExactAndAllModes) {
  const auto snap = storehouse();
  EXPECT_EQ(search(snap->model, "db.cache.CacheKey", SearchMode::Exact).matches,
            std::vector<QName>{QName("db.cache.CacheKey")});
  EXPECT_TRUE(search(snap->model, "CacheKey", SearchMode::Exact).matches.empty());
  EXPECT_EQ(search(snap->model, "  db.Keyspace  ", SearchMode::Exact).matches.size(), 1u);
  EXPECT_THROW(search(snap->model, "   ", SearchMode::All), EmptyQuery);

  // Linear-scan oracle for substring mode.
  for (const char* q : {"cache", "CACHE", "#", "flush", "db.storage.memtable#"}) {
    std::string needle(q);
    std::transform(needle.begin(), needle.end(), needle.begin(), [](unsigned char c) { return std::tolower(c); });
    std::vector<QName> expected;
    for (const auto& name : snap->model.enumerate(KindFilter::All)) {
      std::string hay = name.str();
      std::transform(hay.begin(), hay.end(), hay.begin(), [](unsigned char c) { return std::tolower(c); });
      if (hay.find(needle) != std::string::npos) expected.push_back(name);
    }
    EXPECT_EQ(search(snap->model, q, SearchMode::All).matches, expected) << q;
  }
}

TEST(Api, RoutesAndErrors) {
  const auto snap = storehouse();
  EXPECT_EQ(handle_api(*snap, "/api/scene", {}).body, snap->scene_json);

  const auto feature = handle_api(*snap, "/api/feature/F1", {});
  EXPECT_EQ(feature.status, 200);
  EXPECT_EQ(json::parse(feature.body)["title"], "Row cache");

  const auto missing = handle_api(*snap, "/api/feature/F404", {});
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(json::parse(missing.body)["error"], "not_found");

  const auto sprint = handle_api(*snap, "/api/select", {{"level", "sprint"}, {"id", "S9"}});
  EXPECT_EQ(sprint.status, 404);
  EXPECT_EQ(handle_api(*snap, "/api/select", {{"level", "galaxy"}, {"id", "S1"}}).status, 400);
  EXPECT_EQ(handle_api(*snap, "/api/artifact/db.Ghost", {}).status, 404);
  EXPECT_EQ(handle_api(*snap, "/api/search", {{"q", " "}}).status, 400);
  EXPECT_EQ(handle_api(*snap, "/api/nowhere", {}).status, 404);
  EXPECT_EQ(handle_api(*snap, "/api/rc", {{"mode", "concept"}}).status, 400);
  EXPECT_EQ(handle_api(*snap, "/api/rc", {{"scale", "building"}, {"target", "db.storage"}}).status, 400);

  const auto both = json::parse(handle_api(*snap, "/api/select", {{"level", "feature"}, {"id", "F3,F4"}}).body);
  EXPECT_EQ(both["highlight"], json::array({"db.storage.Memtable#flush/0", "util.Clock"}));

  const auto features = json::parse(handle_api(*snap, "/api/artifact/db.storage.Memtable/features", {}).body);
  EXPECT_EQ(features["features"][0]["id"], "F4");

  const auto rc = json::parse(handle_api(*snap, "/api/rc", {{"mode", "concept"}, {"level", "feature"}, {"id", "F1"}}).body);
  EXPECT_EQ(rc["rc"]["db.cache.CacheService"]["band"], 4);
  EXPECT_EQ(rc["rc"]["db.cache.Evictor"]["color"], "#D32F2F");

  const auto found = json::parse(handle_api(*snap, "/api/search", {{"q", "db.cache.Evictor"}}).body);
  ASSERT_EQ(found["matches"].size(), 1u);
  EXPECT_EQ(found["targets"][0]["dims"].size(), 3u);

  const auto warnings = json::parse(handle_api(*snap, "/api/warnings", {}).body);
  EXPECT_EQ(warnings["warnings"][0]["qname"], "net.LegacyProtocol");
}

TEST(Api, IdempotentResponses) {
  const auto snap = storehouse();
  for (const char* path : {"/api/feature/F2", "/api/artifact/db.Keyspace", "/api/pbis"}) {
    const auto a = handle_api(*snap, path, {});
    const auto b = handle_api(*snap, path, {});
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.body, b.body);
  }
}

TEST(Service, FailedReloadKeepsSnapshot) {
  SceneService service(storehouse());
  const auto before = service.snapshot();
  EXPECT_THROW(service.reload({testing::fixture_path("malformed.scrum.xml"), {}}, {}, {}), DataError);
  EXPECT_EQ(service.snapshot(), before);
  service.reload({testing::fixture_path("storehouse.code.json"), {}}, {}, {});
  EXPECT_EQ(service.snapshot()->dataset.feature_count(), 0u);
}

}  // namespace
}  // namespace tracecity
