#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "tracecity/rc_view.hpp"

namespace tracecity {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  /// `#RRGGBB`, uppercase.
  std::string hex() const;
  /// Accepts `#RRGGBB` (either case). Throws DataError.
  static Rgb parse(std::string_view text);
  /// WCAG relative luminance in [0, 1].
  double luminance() const;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Moves each channel `fraction` of the way towards white, rounding to nearest.
Rgb lighten(Rgb base, double fraction);

/// Every colour the layout and overlays use. Defaults match the documented
/// scheme; `load_palette` overrides individual entries from a JSON file.
struct Palette {
  std::array<Rgb, 6> loc_bands{Rgb{0xCF, 0xD8, 0xDC}, Rgb{0x90, 0xA4, 0xAE}, Rgb{0x60, 0x7D, 0x8B},
                               Rgb{0x45, 0x5A, 0x64}, Rgb{0x26, 0x32, 0x38}, Rgb{0x10, 0x14, 0x18}};
  Rgb package_base{0x37, 0x47, 0x4F};
  Rgb method{0x29, 0x62, 0xFF};
  std::array<Rgb, 4> rc_bands{Rgb{0xD3, 0x2F, 0x2F}, Rgb{0xF5, 0x7C, 0x00}, Rgb{0x4F, 0xC3, 0xF7},
                              Rgb{0x38, 0x8E, 0x3C}};

  /// Six LOC bands, lower-inclusive cut points 200/500/1000/1500/2000.
  Rgb class_color(std::int64_t loc) const;
  /// lighten(package_base, 0.40 - 0.05 * min(nl, 8)).
  Rgb package_color(int nl) const;
  Rgb band_color(Band band) const;
};

/// Zero-based LOC band index for `loc` (0..5).
int loc_band(std::int64_t loc) noexcept;

/// Config file: `{"loc_colors": [6 hex], "package_base": hex,
/// "method_color": hex, "rc_colors": [4 hex]}`, every key optional.
Palette load_palette(std::string_view json_text);

}  // namespace tracecity
