#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tracecity/code_model.hpp"
#include "tracecity/palette.hpp"

namespace tracecity {

enum class GlyphKind { Platform, Building, Cylinder, MethodCube };

std::string_view to_string(GlyphKind kind) noexcept;

struct Vec3 {
  double x = 0;
  double y = 0;
  double z = 0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Axis-aligned box; `position` is the min corner, y points up.
struct Glyph {
  QName qname;
  GlyphKind kind = GlyphKind::Platform;
  Vec3 position;
  Vec3 dims;
  Rgb color;
  std::optional<QName> parent;
  ArtefactRef artefact{ArtefactKind::Package, 0};
  bool on_demand = false;  // method cubes are hidden until the viewer asks

  friend bool operator==(const Glyph&, const Glyph&) = default;
};

struct Bounds {
  Vec3 min;
  Vec3 max;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct CityLayout {
  std::vector<Glyph> glyphs;  // depth-first, same order as CodeModel::enumerate
  Bounds bounds;

  const Glyph* find(const QName& q) const;

  friend bool operator==(const CityLayout&, const CityLayout&) = default;
};

inline constexpr double kPlatformThickness = 0.5;
inline constexpr std::int64_t kPlatformMargin = 1;

struct ClassDims {
  std::int64_t side = 1;
  std::int64_t height = 1;

  friend bool operator==(const ClassDims&, const ClassDims&) = default;
};

/// side = max(1, ceil(sqrt(noa + nom))), height = max(1, nom). Mixing NOA
/// into the footprint keeps method-heavy classes from turning into needles
/// and guarantees side^2 * height >= nom.
ClassDims class_glyph_dims(std::int64_t nom, std::int64_t noa);

/// Unit cubes for `methods` (already in qname order), filling a side x side
/// lattice row-major per layer from the bottom of the class glyph.
std::vector<Glyph> layout_methods(const Glyph& class_glyph, std::span<const MethodNode* const> methods,
                                  Rgb color);

/// Full city. Sibling package subtrees are packed concurrently with OpenMP
/// tasks; the result is identical to `layout_city_serial`.
CityLayout layout_city(const CodeModel& model, const Palette& palette = {});

/// Single-threaded reference for `layout_city`.
CityLayout layout_city_serial(const CodeModel& model, const Palette& palette = {});

}  // namespace tracecity
