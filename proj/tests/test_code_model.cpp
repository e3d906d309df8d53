#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tracecity/code_model.hpp"
#include "tracecity/errors.hpp"

namespace tracecity {
namespace {

constexpr const char* kOneClass = R"({
  "project": "demo",
  "packages": [{
    "name": "app", "packages": [],
    "classes": [{"name": "Main", "kind": "class", "loc": 30, "noa": 1,
                 "methods": [{"name": "stop", "arity": 1, "loc": 5}, {"name": "run", "arity": 0, "loc": 20}]}]
  }]
})";

TEST(CodeModel, IngestsOneClassFixture) {
  const auto model = ingest_code_model(kOneClass);
  EXPECT_EQ(model.project(), "demo");
  EXPECT_EQ(model.artefact_count(), 4u);
  for (const char* q : {"app", "app.Main", "app.Main#run/0", "app.Main#stop/1"}) {
    EXPECT_TRUE(model.resolve(QName(q))) << q;
  }
  const auto cls = model.resolve_class(QName("app.Main"));
  ASSERT_TRUE(cls);
  EXPECT_EQ(model.cls(*cls).nom(), 2);
  EXPECT_EQ(model.cls(*cls).noa, 1);
  EXPECT_EQ(model.cls(*cls).loc, 30);
}

TEST(CodeModel, EmptyRootsGiveEmptyIndex) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": []})");
  EXPECT_EQ(model.artefact_count(), 0u);
  EXPECT_TRUE(model.enumerate(KindFilter::All).empty());
}

TEST(CodeModel, NestingLevelFollowsDepth) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": [
    {"name": "a", "classes": [], "packages": [
      {"name": "b", "classes": [], "packages": [
        {"name": "c", "classes": [], "packages": []}]}]}]})");
  const auto ref = model.resolve(QName("a.b.c"));
  ASSERT_TRUE(ref);
  EXPECT_EQ(model.package(ref->id).nl, 3);
  EXPECT_EQ(model.package(model.resolve(QName("a"))->id).nl, 1);
}

TEST(CodeModel, ResolveReturnsNodesOrAbsent) {
  const auto model = ingest_code_model(kOneClass);
  auto cls = model.resolve(QName("app.Main"));
  ASSERT_TRUE(cls);
  EXPECT_EQ(cls->kind, ArtefactKind::Class);
  EXPECT_EQ(model.cls(cls->id).name, "Main");
  auto method = resolve_qname(model, QName("app.Main#run/0"));
  ASSERT_TRUE(method);
  EXPECT_EQ(method->kind, ArtefactKind::Method);
  EXPECT_EQ(model.method(method->id).name, "run");
  EXPECT_FALSE(model.resolve(QName("app.Ghost")));
}

TEST(CodeModel, EnumerateIsDepthFirstAndSorted) {
  const auto model = ingest_code_model(kOneClass);
  EXPECT_EQ(model.enumerate(KindFilter::Classes), std::vector<QName>{QName("app.Main")});
  EXPECT_EQ(model.enumerate(KindFilter::All),
            (std::vector<QName>{QName("app"), QName("app.Main"), QName("app.Main#run/0"), QName("app.Main#stop/1")}));

  const auto siblings = ingest_code_model(R"({"project": "x", "packages": [
    {"name": "b", "classes": [], "packages": []},
    {"name": "a", "classes": [], "packages": []}]})");
  EXPECT_EQ(siblings.enumerate(KindFilter::Packages), (std::vector<QName>{QName("a"), QName("b")}));
}

TEST(CodeModel, RootClassesLandInDefaultPackage) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": [],
    "classes": [{"name": "Main", "kind": "class", "loc": 1, "noa": 0, "methods": []}]})");
  const auto cls = model.resolve_class(QName("Main"));
  ASSERT_TRUE(cls);
  const auto& pkg = model.package(model.cls(*cls).package);
  EXPECT_EQ(pkg.name, kDefaultPackage);
  EXPECT_EQ(pkg.nl, 1);
}

TEST(CodeModel, SchemaErrorsCarryPath) {
  try {
    ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [],
      "classes": [{"name": "C", "kind": "class", "loc": "ten", "noa": 0, "methods": []}]}]})");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "/packages/0/classes/0/loc");
  }
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [], "extra": 1})"), SchemaError);
  EXPECT_THROW(ingest_code_model(R"({"packages": []})"), SchemaError);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [], "classes": [],
      "nl": 1}]})"), SchemaError);
  EXPECT_THROW(ingest_code_model("{not json"), SchemaError);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [],
      "classes": [{"name": "C", "kind": "struct", "loc": 1, "noa": 0, "methods": []}]}]})"), SchemaError);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [],
      "classes": [{"name": "C", "kind": "class", "loc": -1, "noa": 0, "methods": []}]}]})"), SchemaError);
}

TEST(CodeModel, DuplicateAndBadNames) {
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [
    {"name": "a", "classes": [], "packages": []}, {"name": "a", "classes": [], "packages": []}]})"),
               DuplicateName);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [
    {"name": "C", "classes": [], "packages": []}],
    "classes": [{"name": "C", "kind": "class", "loc": 1, "noa": 0, "methods": []}]}]})"),
               DuplicateName);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [],
    "classes": [{"name": "C", "kind": "class", "loc": 1, "noa": 0, "methods": [
      {"name": "m", "arity": 0, "loc": 1}, {"name": "m", "arity": 0, "loc": 2}]}]}]})"),
               DuplicateName);
  EXPECT_THROW(ingest_code_model(R"({"project": "x", "packages": [{"name": "1bad", "classes": [], "packages": []}]})"),
               BadIdentifier);
}

TEST(CodeModel, OverloadsByArityAreDistinct) {
  const auto model = ingest_code_model(R"({"project": "x", "packages": [{"name": "a", "packages": [],
    "classes": [{"name": "C", "kind": "class", "loc": 1, "noa": 0, "methods": [
      {"name": "m", "arity": 0, "loc": 1}, {"name": "m", "arity": 1, "loc": 2}]}]}]})");
  EXPECT_TRUE(model.resolve(QName("a.C#m/0")));
  EXPECT_TRUE(model.resolve(QName("a.C#m/1")));
}

// Property: serialize/ingest round trip, index completeness, NL and NOM
// consistency on random models.
TEST(CodeModelProperty, RoundTripAndStructuralInvariants) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto model = ingest_code_model(testing::random_model_json(seed, 120));
    const auto text = serialize_code_model(model);
    const auto again = ingest_code_model(text);
    ASSERT_EQ(serialize_code_model(again), text) << "seed " << seed;
    ASSERT_EQ(again.enumerate(), model.enumerate()) << "seed " << seed;

    EXPECT_EQ(model.artefact_count(), model.packages().size() + model.classes().size() + model.methods().size());
    EXPECT_EQ(model.enumerate().size(), model.artefact_count());
    for (const auto& p : model.packages()) {
      if (p.parent) {
        EXPECT_EQ(p.nl, model.package(*p.parent).nl + 1);
      } else {
        EXPECT_EQ(p.nl, 1);
      }
    }
    std::size_t methods = 0;
    for (const auto& c : model.classes()) methods += static_cast<std::size_t>(c.nom());
    EXPECT_EQ(methods, model.methods().size());
  }
}

}  // namespace
}  // namespace tracecity
