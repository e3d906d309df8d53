#include "tracecity/city_layout.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tracecity/packing.hpp"

namespace tracecity {

std::string_view to_string(GlyphKind kind) noexcept {
  switch (kind) {
    case GlyphKind::Platform:
      return "platform";
    case GlyphKind::Building:
      return "building";
    case GlyphKind::Cylinder:
      return "cylinder";
    case GlyphKind::MethodCube:
      return "method_cube";
  }
  return "platform";
}

const Glyph* CityLayout::find(const QName& q) const {
  auto it = std::find_if(glyphs.begin(), glyphs.end(), [&](const Glyph& g) { return g.qname == q; });
  return it == glyphs.end() ? nullptr : &*it;
}

namespace {

std::int64_t ceil_sqrt(std::int64_t n) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while (s * s < n) ++s;
  return s;
}

struct PackedPackage {
  std::int64_t width = 0;  // platform footprint
  std::int64_t depth = 0;
  std::unordered_map<std::string, std::pair<std::int64_t, std::int64_t>> offsets;  // child qname -> x,z
};

PackedPackage pack_children(const CodeModel& model, PackageId id, const std::vector<PackedPackage>& packed) {
  const auto& pkg = model.package(id);
  std::vector<PackItem> items;
  items.reserve(pkg.subpackages.size() + pkg.classes.size());
  for (auto s : pkg.subpackages) {
    items.push_back({model.package(s).qname.str(), packed[s].width, packed[s].depth});
  }
  for (auto c : pkg.classes) {
    const auto& cls = model.cls(c);
    const auto dims = class_glyph_dims(cls.nom(), cls.noa);
    items.push_back({cls.qname.str(), dims.side, dims.side});
  }
  const auto result = pack_rectangles(items);

  PackedPackage out;
  const auto inner_w = result.width > 0 ? result.width - kPackGap : 0;
  const auto inner_d = result.depth > 0 ? result.depth - kPackGap : 0;
  out.width = inner_w + 2 * kPlatformMargin;
  out.depth = inner_d + 2 * kPlatformMargin;
  for (const auto& p : result.placements) out.offsets.emplace(p.id, std::make_pair(p.x, p.z));
  return out;
}

template <bool Parallel>
void pack_subtree(const CodeModel& model, PackageId id, std::vector<PackedPackage>& packed) {
  for (auto sub : model.package(id).subpackages) {
    if constexpr (Parallel) {
#pragma omp task default(none) firstprivate(sub) shared(model, packed)
      pack_subtree<Parallel>(model, sub, packed);
    } else {
      pack_subtree<Parallel>(model, sub, packed);
    }
  }
  if constexpr (Parallel) {
#pragma omp taskwait
  }
  packed[id] = pack_children(model, id, packed);
}

class Emitter {
 public:
  Emitter(const CodeModel& model, const Palette& palette, const std::vector<PackedPackage>& packed)
      : model_(model), palette_(palette), packed_(packed) {}

  void package(PackageId id, double x, double y, double z) {
    const auto& pkg = model_.package(id);
    const auto& footprint = packed_[id];
    Glyph g;
    g.qname = pkg.qname;
    g.kind = GlyphKind::Platform;
    g.position = {x, y, z};
    g.dims = {static_cast<double>(footprint.width), kPlatformThickness, static_cast<double>(footprint.depth)};
    g.color = palette_.package_color(pkg.nl);
    if (pkg.parent) g.parent = model_.package(*pkg.parent).qname;
    g.artefact = {ArtefactKind::Package, id};
    glyphs_.push_back(std::move(g));

    const double top = y + kPlatformThickness;
    auto place = [&](const QName& child) {
      const auto& [ox, oz] = footprint.offsets.at(child.str());
      return std::make_pair(x + static_cast<double>(kPlatformMargin + ox), z + static_cast<double>(kPlatformMargin + oz));
    };
    auto sp = pkg.subpackages.begin();
    auto cl = pkg.classes.begin();
    while (sp != pkg.subpackages.end() || cl != pkg.classes.end()) {
      const bool take_pkg = cl == pkg.classes.end() ||
                            (sp != pkg.subpackages.end() && model_.package(*sp).name < model_.cls(*cl).name);
      if (take_pkg) {
        const auto [cx, cz] = place(model_.package(*sp).qname);
        package(*sp++, cx, top, cz);
      } else {
        const auto [cx, cz] = place(model_.cls(*cl).qname);
        building(*cl++, cx, top, cz);
      }
    }
  }

  void building(ClassId id, double x, double y, double z) {
    const auto& cls = model_.cls(id);
    const auto dims = class_glyph_dims(cls.nom(), cls.noa);
    Glyph g;
    g.qname = cls.qname;
    g.kind = cls.kind == ClassKind::Interface ? GlyphKind::Cylinder : GlyphKind::Building;
    g.position = {x, y, z};
    g.dims = {static_cast<double>(dims.side), static_cast<double>(dims.height), static_cast<double>(dims.side)};
    g.color = palette_.class_color(cls.loc);
    g.parent = model_.package(cls.package).qname;
    g.artefact = {ArtefactKind::Class, id};

    const auto sorted = model_.methods_sorted(id);
    std::vector<const MethodNode*> methods;
    for (auto m : sorted) methods.push_back(&model_.method(m));
    auto cubes = layout_methods(g, methods, palette_.method);
    for (std::size_t i = 0; i < cubes.size(); ++i) cubes[i].artefact = {ArtefactKind::Method, sorted[i]};

    glyphs_.push_back(std::move(g));
    glyphs_.insert(glyphs_.end(), std::make_move_iterator(cubes.begin()), std::make_move_iterator(cubes.end()));
  }

  std::vector<Glyph> take() { return std::move(glyphs_); }

 private:
  const CodeModel& model_;
  const Palette& palette_;
  const std::vector<PackedPackage>& packed_;
  std::vector<Glyph> glyphs_;
};

template <bool Parallel>
CityLayout layout_impl(const CodeModel& model, const Palette& palette) {
  std::vector<PackedPackage> packed(model.packages().size());
  const auto roots = model.roots();
  if constexpr (Parallel) {
#pragma omp parallel default(none) shared(model, packed, roots)
#pragma omp single
    for (auto r : roots) {
#pragma omp task default(none) firstprivate(r) shared(model, packed)
      pack_subtree<true>(model, r, packed);
    }
  } else {
    for (auto r : roots) pack_subtree<false>(model, r, packed);
  }

  std::vector<PackItem> items;
  for (auto r : roots) items.push_back({model.package(r).qname.str(), packed[r].width, packed[r].depth});
  const auto top = pack_rectangles(items);
  std::unordered_map<std::string, std::pair<std::int64_t, std::int64_t>> offsets;
  for (const auto& p : top.placements) offsets.emplace(p.id, std::make_pair(p.x, p.z));

  Emitter emitter(model, palette, packed);
  for (auto r : roots) {
    const auto& [x, z] = offsets.at(model.package(r).qname.str());
    emitter.package(r, static_cast<double>(x), 0.0, static_cast<double>(z));
  }

  CityLayout layout;
  layout.glyphs = emitter.take();
  if (!layout.glyphs.empty()) {
    auto& b = layout.bounds;
    b.min = layout.glyphs.front().position;
    b.max = b.min;
    for (const auto& g : layout.glyphs) {
      b.min = {std::min(b.min.x, g.position.x), std::min(b.min.y, g.position.y), std::min(b.min.z, g.position.z)};
      b.max = {std::max(b.max.x, g.position.x + g.dims.x), std::max(b.max.y, g.position.y + g.dims.y),
               std::max(b.max.z, g.position.z + g.dims.z)};
    }
  }
  return layout;
}

}  // namespace

ClassDims class_glyph_dims(std::int64_t nom, std::int64_t noa) {
  return {std::max<std::int64_t>(1, ceil_sqrt(std::max<std::int64_t>(0, noa + nom))), std::max<std::int64_t>(1, nom)};
}

std::vector<Glyph> layout_methods(const Glyph& class_glyph, std::span<const MethodNode* const> methods, Rgb color) {
  const auto side = std::max<std::int64_t>(1, static_cast<std::int64_t>(class_glyph.dims.x));
  const auto layer_size = side * side;
  std::vector<Glyph> cubes;
  cubes.reserve(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i);
    const auto layer = n / layer_size;
    const auto cell = n % layer_size;
    Glyph g;
    g.qname = methods[i]->qname;
    g.kind = GlyphKind::MethodCube;
    g.position = {class_glyph.position.x + static_cast<double>(cell % side),
                  class_glyph.position.y + static_cast<double>(layer),
                  class_glyph.position.z + static_cast<double>(cell / side)};
    g.dims = {1, 1, 1};
    g.color = color;
    g.parent = class_glyph.qname;
    g.artefact = {ArtefactKind::Method, 0};
    g.on_demand = true;
    cubes.push_back(std::move(g));
  }
  return cubes;
}

CityLayout layout_city(const CodeModel& model, const Palette& palette) { return layout_impl<true>(model, palette); }

CityLayout layout_city_serial(const CodeModel& model, const Palette& palette) {
  return layout_impl<false>(model, palette);
}

}  // namespace tracecity
