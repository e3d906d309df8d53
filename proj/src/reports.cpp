#include <algorithm>
#include <cstdio>

#include "tracecity/scene_service.hpp"

namespace tracecity {

namespace {

std::string pad(std::string_view text, std::size_t width) {
  std::string out(text);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

std::string locality_table(const LocalityReport& report) {
  std::string out;
  out += "feature  " + report.feature_id + "\n";
  out += "classes  " + std::to_string(report.classes.size()) + "\n";
  out += "packages " + std::to_string(report.packages.size()) + "\n";
  out += "modules  " + std::to_string(report.module_count) + "\n\n";

  std::size_t width = 5;
  for (const auto& q : report.classes) width = std::max(width, q.str().size());
  out += pad("class", width) + "\n";
  out += std::string(width, '-') + "\n";
  for (const auto& q : report.classes) out += q.str() + "\n";
  return out;
}

std::string rc_table(const std::map<QName, RcState>& states) {
  std::size_t width = 5;
  for (const auto& [q, _] : states) width = std::max(width, q.str().size());

  std::string out = pad("class", width) + "  completed  remaining  done%  band  tracked\n";
  out += std::string(width + 45, '-') + "\n";
  for (const auto& [q, s] : states) {
    char row[96];
    std::snprintf(row, sizeof row, "  %9s  %9s  %5.1f  %4d  %s\n", s.completed.to_string().c_str(),
                  s.remaining.to_string().c_str(), s.completed_fraction * 100.0, static_cast<int>(s.band),
                  s.untracked ? "no" : "yes");
    out += pad(q.str(), width) + row;
  }
  return out;
}

}  // namespace tracecity
