#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tracecity {

struct PackItem {
  std::string id;
  std::int64_t width = 1;  // x extent
  std::int64_t depth = 1;  // z extent
};

struct Placement {
  std::string id;
  std::int64_t x = 0;
  std::int64_t z = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct PackResult {
  std::vector<Placement> placements;  // in packing order
  /// Tight box over the placed items including the trailing gap.
  std::int64_t width = 0;
  std::int64_t depth = 0;
};

/// Gap kept between any two placed items (and after the last one on +x/+z).
inline constexpr std::int64_t kPackGap = 1;

/// Deterministic greedy free-rectangle packer.
///
/// Items are inflated by the gap on +x/+z and sorted by longest side, then
/// area (both descending), then id. Each item goes to the free rectangle with
/// the smallest z, then smallest x, that can hold it; that rectangle is split
/// guillotine-style into a right-of and a behind-of remainder. The region
/// starts as a square of side ceil(1.2 * sqrt(total area)) and grows along its
/// shorter axis whenever nothing fits.
///
/// Throws Error for non-positive sizes.
PackResult pack_rectangles(std::span<const PackItem> items);

}  // namespace tracecity
