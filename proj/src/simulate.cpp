#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "tracecity/code_model.hpp"
#include "tracecity/errors.hpp"
#include "tracecity/scrum_data.hpp"

namespace tracecity {

namespace {

// std::uniform_int_distribution is implementation-defined; this is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const auto r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

 private:
  std::mt19937_64 engine_;
};

constexpr int kSprintsPerRelease = 4;
constexpr int kSprintDays = 14;
constexpr std::array kDevelopers{"amara", "bogdan", "chen", "dana", "eitan", "farah"};
constexpr std::array kTaskNames{"Design", "Implement", "Write tests", "Code review"};
constexpr std::array kNouns{"handling", "support", "workflow", "validation", "caching", "reporting"};

Category draw_category(Rng& rng) {
  const auto r = rng.below(100);
  if (r < 60) return Category::NewFeature;
  if (r < 85) return Category::Enhancement;
  return Category::BugFix;
}

std::string_view verb_for(Category c) {
  switch (c) {
    case Category::NewFeature:
      return "Add";
    case Category::Enhancement:
      return "Improve";
    case Category::BugFix:
      return "Fix";
  }
  return "Add";
}

// Picks up to `count` distinct classes, biased towards the anchor's package so
// that features stay reasonably local.
std::vector<ClassId> pick_classes(const CodeModel& model, Rng& rng, int count) {
  const auto total = model.classes().size();
  std::vector<ClassId> picked;
  std::set<ClassId> seen;
  const auto anchor = static_cast<ClassId>(rng.below(total));
  picked.push_back(anchor);
  seen.insert(anchor);

  const auto& neighbours = model.package(model.cls(anchor).package).classes;
  int attempts = 0;
  while (static_cast<int>(picked.size()) < count && attempts < 64 * count) {
    ++attempts;
    ClassId candidate;
    if (neighbours.size() > 1 && rng.chance(70)) {
      candidate = neighbours[rng.below(neighbours.size())];
    } else {
      candidate = static_cast<ClassId>(rng.below(total));
    }
    if (seen.insert(candidate).second) picked.push_back(candidate);
  }
  return picked;
}

}  // namespace

ScrumDataset simulate_scrum(const CodeModel& model, const SimulationParams& params) {
  if (model.classes().empty()) throw EmptyModel("cannot simulate Scrum data for a model without classes");
  if (params.sprints < 0 || params.features_per_sprint < 0) throw Error("simulation counts must be non-negative");

  Rng rng(params.seed);
  const Date base{std::chrono::year{2024}, std::chrono::January, std::chrono::day{1}};
  const int max_classes = static_cast<int>(std::min<std::size_t>(7, model.classes().size()));

  std::vector<Release> releases;
  int feature_no = 0;
  for (int s = 1; s <= params.sprints; ++s) {
    if ((s - 1) % kSprintsPerRelease == 0) {
      const auto r = static_cast<int>(releases.size()) + 1;
      releases.push_back({"R" + std::to_string(r), "Release " + std::to_string(r), {}});
    }
    Sprint sprint;
    sprint.id = "S" + std::to_string(s);
    sprint.name = "Sprint " + std::to_string(s);
    sprint.number = (s - 1) % kSprintsPerRelease + 1;
    const auto start = std::chrono::sys_days{base} + std::chrono::days{kSprintDays * (s - 1)};
    sprint.start = Date{start};
    sprint.end = Date{start + std::chrono::days{kSprintDays - 1}};

    // Later sprints are less complete.
    const int completed_percent =
        params.sprints <= 1 ? 60 : 85 - (50 * (s - 1)) / (params.sprints - 1);

    for (int k = 1; k <= params.features_per_sprint; ++k) {
      Feature f;
      f.id = "F" + std::to_string(++feature_no);
      f.category = draw_category(rng);
      f.priority = k;
      f.developer = kDevelopers[rng.below(kDevelopers.size())];

      const auto classes = pick_classes(model, rng, rng.between(1, max_classes));
      for (auto c : classes) f.class_refs.push_back(model.cls(c).qname);

      std::vector<MethodId> pool;
      for (auto c : classes) {
        const auto& ms = model.cls(c).methods;
        pool.insert(pool.end(), ms.begin(), ms.end());
      }
      const int method_count = std::min(rng.between(0, 3), static_cast<int>(pool.size()));
      for (int m = 0; m < method_count; ++m) {
        const auto pick = m + static_cast<std::size_t>(rng.below(pool.size() - m));
        std::swap(pool[m], pool[pick]);
        f.method_refs.push_back(model.method(pool[m]).qname);
      }

      const auto& anchor = model.cls(classes.front());
      f.title = std::string(verb_for(f.category)) + " " + anchor.name + " " + kNouns[rng.below(kNouns.size())];
      f.description = "Touches " + std::to_string(classes.size()) + " class(es) starting from " +
                      anchor.qname.str() + ".";
      const int tasks = rng.between(1, 3);
      for (int t = 0; t < tasks; ++t) f.tasks.push_back(kTaskNames[t] + std::string(" ") + f.id);

      std::vector<QName> targets = f.class_refs;
      targets.insert(targets.end(), f.method_refs.begin(), f.method_refs.end());
      const int entries = rng.between(2, 10);
      for (int e = 0; e < entries; ++e) {
        WorkEntry w;
        w.qname = targets[rng.below(targets.size())];
        w.date = Date{start + std::chrono::days{static_cast<int>(rng.below(kSprintDays))}};
        w.hours = Hours::from_millis(500 * rng.between(1, 16));
        w.type = rng.chance(completed_percent) ? EntryType::Completed : EntryType::Remaining;
        f.estimate += w.hours;
        f.work_entries.push_back(std::move(w));
      }
      sprint.features.push_back(std::move(f));
    }
    releases.back().sprints.push_back(std::move(sprint));
  }
  return ScrumDataset(model.project(), std::move(releases));
}

}  // namespace tracecity
