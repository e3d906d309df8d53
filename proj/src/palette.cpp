#include "tracecity/palette.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tracecity/errors.hpp"

namespace tracecity {

std::string Rgb::hex() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (auto c : {r, g, b}) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

Rgb Rgb::parse(std::string_view text) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DataError("invalid colour '" + std::string(text) + "'");
  };
  if (text.size() != 7 || text[0] != '#') throw DataError("invalid colour '" + std::string(text) + "'");
  auto byte = [&](std::size_t i) { return static_cast<std::uint8_t>(nibble(text[i]) * 16 + nibble(text[i + 1])); };
  return {byte(1), byte(3), byte(5)};
}

double Rgb::luminance() const {
  auto linear = [](std::uint8_t c) {
    const double s = c / 255.0;
    return s <= 0.03928 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
  };
  return 0.2126 * linear(r) + 0.7152 * linear(g) + 0.0722 * linear(b);
}

Rgb lighten(Rgb base, double fraction) {
  auto channel = [&](std::uint8_t c) {
    return static_cast<std::uint8_t>(std::lround(c + (255.0 - c) * fraction));
  };
  return {channel(base.r), channel(base.g), channel(base.b)};
}

int loc_band(std::int64_t loc) noexcept {
  static constexpr std::array<std::int64_t, 5> kCuts{200, 500, 1000, 1500, 2000};
  return static_cast<int>(std::upper_bound(kCuts.begin(), kCuts.end(), loc) - kCuts.begin());
}

Rgb Palette::class_color(std::int64_t loc) const { return loc_bands[static_cast<std::size_t>(loc_band(loc))]; }

Rgb Palette::package_color(int nl) const {
  const int level = std::clamp(nl, 1, 8);
  // Percent steps keep the arithmetic exact.
  return lighten(package_base, (40 - 5 * level) / 100.0);
}

Rgb Palette::band_color(Band band) const { return rc_bands[static_cast<std::size_t>(band) - 1]; }

Palette load_palette(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("config: expected object");
  Palette p;
  auto colour = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw DataError("config: " + key + " must be a colour string");
    return Rgb::parse(v.get<std::string>());
  };
  auto colours = [&](const std::string& key, auto& target) {
    const auto& v = doc.at(key);
    if (!v.is_array() || v.size() != target.size()) {
      throw DataError("config: " + key + " must list " + std::to_string(target.size()) + " colours");
    }
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = colour(v[i], key);
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "loc_colors") {
      colours(key, p.loc_bands);
    } else if (key == "rc_colors") {
      colours(key, p.rc_bands);
    } else if (key == "package_base") {
      p.package_base = colour(value, key);
    } else if (key == "method_color") {
      p.method = colour(value, key);
    } else {
      throw DataError("config: unknown key '" + key + "'");
    }
  }
  return p;
}

}  // namespace tracecity
