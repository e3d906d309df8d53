#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tracecity/city_layout.hpp"
#include "tracecity/code_model.hpp"

namespace tracecity {
namespace {

TEST(ClassDims, SideFromAttributesAndMethods) {
  EXPECT_EQ(class_glyph_dims(0, 0), (ClassDims{1, 1}));
  EXPECT_EQ(class_glyph_dims(5, 4), (ClassDims{3, 5}));
  EXPECT_EQ(class_glyph_dims(4, 5), (ClassDims{3, 4}));
  EXPECT_EQ(class_glyph_dims(100, 0), (ClassDims{10, 100}));
  EXPECT_EQ(class_glyph_dims(0, 17), (ClassDims{5, 1}));
}

TEST(CityLayout, OnePackageOneClass) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": [{"name": "app", "packages": [],
    "classes": [{"name": "Main", "kind": "class", "loc": 10, "noa": 0, "methods": []}]}]})");
  const auto layout = layout_city(model);
  ASSERT_EQ(layout.glyphs.size(), 2u);
  const auto& platform = layout.glyphs[0];
  EXPECT_EQ(platform.kind, GlyphKind::Platform);
  EXPECT_EQ(platform.position, (Vec3{0, 0, 0}));
  EXPECT_EQ(platform.dims, (Vec3{3, kPlatformThickness, 3}));
  const auto& building = layout.glyphs[1];
  EXPECT_EQ(building.kind, GlyphKind::Building);
  EXPECT_EQ(building.dims, (Vec3{1, 1, 1}));
  EXPECT_EQ(building.position, (Vec3{1, kPlatformThickness, 1}));
  EXPECT_EQ(building.parent, QName("app"));
  EXPECT_EQ(layout.bounds.max, (Vec3{3, 1.5, 3}));
}

TEST(CityLayout, EmptyModelHasNoGlyphs) {
  const auto layout = layout_city(ingest_code_model(R"({"project": "x", "packages": []})"));
  EXPECT_TRUE(layout.glyphs.empty());
}

TEST(CityLayout, NestedPlatformsStack) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "classes": [], "packages": [
    {"name": "b", "classes": [], "packages": []}]}]})");
  const auto layout = layout_city(model);
  const auto* a = layout.find(QName("a"));
  const auto* b = layout.find(QName("a.b"));
  ASSERT_TRUE(a && b);
  EXPECT_DOUBLE_EQ(b->position.y, a->position.y + kPlatformThickness);
  EXPECT_EQ(b->dims, (Vec3{2, kPlatformThickness, 2}));
  EXPECT_EQ(a->dims, (Vec3{4, kPlatformThickness, 4}));
}

TEST(CityLayout, MethodLatticeFillsLayersRowMajor) {
  Glyph cls;
  cls.qname = QName("a.C");
  cls.position = {10, 2, 20};
  cls.dims = {2, 5, 2};
  std::vector<MethodNode> nodes;
  for (int i = 0; i < 5; ++i) nodes.push_back({"m" + std::to_string(i), 0, 1, QName("a.C#m" + std::to_string(i) + "/0"), 0});
  std::vector<const MethodNode*> ptrs;
  for (const auto& n : nodes) ptrs.push_back(&n);
  const auto cubes = layout_methods(cls, ptrs, Rgb{});
  ASSERT_EQ(cubes.size(), 5u);
  EXPECT_EQ(cubes[0].position, (Vec3{10, 2, 20}));
  EXPECT_EQ(cubes[1].position, (Vec3{11, 2, 20}));
  EXPECT_EQ(cubes[2].position, (Vec3{10, 2, 21}));
  EXPECT_EQ(cubes[3].position, (Vec3{11, 2, 21}));
  EXPECT_EQ(cubes[4].position, (Vec3{10, 3, 20}));
  for (const auto& c : cubes) {
    EXPECT_TRUE(c.on_demand);
    EXPECT_EQ(c.parent, QName("a.C"));
  }
}

TEST(CityLayout, InterfacesAreCylindersAndCubesFollowOwners) {
  const auto model = ingest_code_model(read_file(testing::fixture_path("storehouse.code.json")));
  const auto layout = layout_city(model);
  EXPECT_EQ(layout.find(QName("util.Clock"))->kind, GlyphKind::Cylinder);
  EXPECT_EQ(layout.find(QName("db.cache.CacheLoader"))->kind, GlyphKind::Cylinder);
  EXPECT_EQ(layout.find(QName("db.cache.CacheService"))->kind, GlyphKind::Building);
  EXPECT_EQ(layout.find(QName("util.Clock#now/0"))->kind, GlyphKind::MethodCube);

  std::vector<QName> order;
  for (const auto& g : layout.glyphs) order.push_back(g.qname);
  EXPECT_EQ(order, model.enumerate(KindFilter::All));
  EXPECT_TRUE(testing::check_layout(model, layout).ok());
}

// Properties on random models: oracle invariants, serial == parallel, and
// identical output on repeated runs.
TEST(CityLayoutProperty, OracleInvariantsAndDeterminism) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto model = ingest_code_model(testing::random_model_json(seed, 300));
    const auto layout = layout_city(model);
    const auto check = testing::check_layout(model, layout);
    ASSERT_TRUE(check.ok()) << "seed " << seed << " overlaps " << check.overlaps << " gaps " << check.gap_violations
                            << " containment " << check.containment_violations << " capacity "
                            << check.capacity_violations << " cubes " << check.cube_violations;
    ASSERT_EQ(layout, layout_city_serial(model)) << "seed " << seed;
    ASSERT_EQ(layout, layout_city(model));
  }
}

}  // namespace
}  // namespace tracecity
