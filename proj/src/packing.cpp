#include "tracecity/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tracecity/errors.hpp"

namespace tracecity {

namespace {

struct Rect {
  std::int64_t x, z, w, d;

  bool holds(std::int64_t iw, std::int64_t id) const noexcept { return iw <= w && id <= d; }
};

// Smallest s with 25 s^2 >= 36 area, i.e. s = ceil(1.2 * sqrt(area)), in
// integer arithmetic.
std::int64_t seed_side(std::int64_t area) {
  const std::int64_t target = 36 * area;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(target) / 25.0));
  while (s > 0 && 25 * (s - 1) * (s - 1) >= target) --s;
  while (25 * s * s < target) ++s;
  return s;
}

}  // namespace

PackResult pack_rectangles(std::span<const PackItem> items) {
  PackResult result;
  if (items.empty()) return result;

  struct Work {
    const PackItem* item;
    std::int64_t w, d;
  };
  std::vector<Work> order;
  order.reserve(items.size());
  std::int64_t area = 0;
  for (const auto& item : items) {
    if (item.width <= 0 || item.depth <= 0) throw Error("pack item '" + item.id + "' has non-positive size");
    order.push_back({&item, item.width + kPackGap, item.depth + kPackGap});
    area += order.back().w * order.back().d;
  }
  std::sort(order.begin(), order.end(), [](const Work& a, const Work& b) {
    const auto la = std::max(a.w, a.d);
    const auto lb = std::max(b.w, b.d);
    if (la != lb) return la > lb;
    if (a.w * a.d != b.w * b.d) return a.w * a.d > b.w * b.d;
    return a.item->id < b.item->id;
  });

  std::int64_t region_w = seed_side(area);
  std::int64_t region_d = region_w;
  std::vector<Rect> free{{0, 0, region_w, region_d}};

  for (const auto& work : order) {
    auto best = free.end();
    while (true) {
      best = free.end();
      for (auto it = free.begin(); it != free.end(); ++it) {
        if (!it->holds(work.w, work.d)) continue;
        if (best == free.end() || it->z < best->z || (it->z == best->z && it->x < best->x)) best = it;
      }
      if (best != free.end()) break;
      if (region_w <= region_d) {
        free.push_back({region_w, 0, work.w, region_d});
        region_w += work.w;
      } else {
        free.push_back({0, region_d, region_w, work.d});
        region_d += work.d;
      }
    }

    const Rect chosen = *best;
    free.erase(best);
    result.placements.push_back({work.item->id, chosen.x, chosen.z});
    result.width = std::max(result.width, chosen.x + work.w);
    result.depth = std::max(result.depth, chosen.z + work.d);

    const Rect right{chosen.x + work.w, chosen.z, chosen.w - work.w, chosen.d};
    const Rect behind{chosen.x, chosen.z + work.d, work.w, chosen.d - work.d};
    if (right.w > 0 && right.d > 0) free.push_back(right);
    if (behind.w > 0 && behind.d > 0) free.push_back(behind);
  }
  return result;
}

}  // namespace tracecity
