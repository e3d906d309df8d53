#include <gtest/gtest.h>

#include <random>

#include "tracecity/errors.hpp"
#include "tracecity/packing.hpp"

namespace tracecity {
namespace {

TEST(Packing, SingleItemSitsAtOrigin) {
  const std::vector<PackItem> items{{"a", 4, 4}};
  const auto r = pack_rectangles(items);
  ASSERT_EQ(r.placements.size(), 1u);
  EXPECT_EQ(r.placements[0], (Placement{"a", 0, 0}));
  EXPECT_EQ(r.width, 5);
  EXPECT_EQ(r.depth, 5);
}

TEST(Packing, HandPackedExample) {
  // Inflated sizes 3x3, 3x2, 2x2, area 19, seed side 6. B goes right of A,
  // C behind B at the next lowest z.
  const std::vector<PackItem> items{{"C", 1, 1}, {"B", 2, 1}, {"A", 2, 2}};
  const auto r = pack_rectangles(items);
  EXPECT_EQ(r.placements, (std::vector<Placement>{{"A", 0, 0}, {"B", 3, 0}, {"C", 3, 2}}));
  EXPECT_EQ(r.width, 6);
  EXPECT_EQ(r.depth, 4);
}

TEST(Packing, EmptyAndInvalidInput) {
  const auto r = pack_rectangles({});
  EXPECT_TRUE(r.placements.empty());
  EXPECT_EQ(r.width, 0);
  const std::vector<PackItem> bad{{"x", 0, 3}};
  EXPECT_THROW(pack_rectangles(bad), Error);
}

// Property: random item sets never overlap (gap included), stay inside the
// reported bounds, and pack identically twice.
TEST(PackingProperty, NoOverlapWithinBounds) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    std::vector<PackItem> items;
    const auto n = 1 + rng() % 60;
    for (std::size_t i = 0; i < n; ++i) {
      items.push_back({"i" + std::to_string(i), static_cast<std::int64_t>(1 + rng() % 12),
                       static_cast<std::int64_t>(1 + rng() % 12)});
    }
    const auto r = pack_rectangles(items);
    ASSERT_EQ(r.placements.size(), items.size());
    std::map<std::string, PackItem> by_id;
    for (const auto& it : items) by_id[it.id] = it;
    for (std::size_t i = 0; i < r.placements.size(); ++i) {
      const auto& a = r.placements[i];
      const auto& ai = by_id.at(a.id);
      ASSERT_GE(a.x, 0);
      ASSERT_GE(a.z, 0);
      ASSERT_LE(a.x + ai.width + kPackGap, r.width);
      ASSERT_LE(a.z + ai.depth + kPackGap, r.depth);
      for (std::size_t j = i + 1; j < r.placements.size(); ++j) {
        const auto& b = r.placements[j];
        const auto& bi = by_id.at(b.id);
        const bool apart = a.x + ai.width + kPackGap <= b.x || b.x + bi.width + kPackGap <= a.x ||
                           a.z + ai.depth + kPackGap <= b.z || b.z + bi.depth + kPackGap <= a.z;
        ASSERT_TRUE(apart) << a.id << " vs " << b.id;
      }
    }
    const auto again = pack_rectangles(items);
    ASSERT_EQ(again.placements, r.placements);
  }
}

}  // namespace
}  // namespace tracecity
