#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tracecity/code_model.hpp"
#include "tracecity/scrum_data.hpp"
#include "tracecity/trace_index.hpp"

namespace tracecity {

/// Completed-work colour bands, lower bound inclusive:
/// [0, .2) Band1, [.2, .4) Band2, [.4, .7) Band3, [.7, 1] Band4.
enum class Band { Band1 = 1, Band2, Band3, Band4 };

/// Throws OutOfRange outside [0, 1] (and for NaN).
Band rc_band(double completed_fraction);

struct RcState {
  QName qname;
  Hours completed;
  Hours remaining;
  double completed_fraction = 1.0;
  double transparent_fraction = 0.0;
  Band band = Band::Band4;
  bool untracked = true;  // no contributing work entries

  friend bool operator==(const RcState&, const RcState&) = default;
};

enum class RcMode { Artefact, Concept };
enum class RcScale { City, Building };

struct RcScope {
  RcMode mode = RcMode::Artefact;
  std::optional<Selection> selection;  // required for Concept
  RcScale scale = RcScale::City;
  std::set<QName> target_classes;      // required for Building
};

/// Remaining/completed state of one class. Artefact mode counts every work
/// entry on the class or its methods; Concept mode only entries of features
/// in the selection. Throws NotAClass, UnknownId, InvalidScope.
RcState rc_class(const TraceIndex& index, const ScrumDataset& dataset, const CodeModel& model, const QName& q,
                 const RcScope& scope);

/// RC states keyed by class qname (ascending). Buckets entries per class and
/// sums classes in parallel.
std::map<QName, RcState> rc_map(const TraceIndex& index, const ScrumDataset& dataset, const CodeModel& model,
                                const RcScope& scope);

/// Reference implementation: one `rc_class` call per class, single thread.
std::map<QName, RcState> rc_map_serial(const TraceIndex& index, const ScrumDataset& dataset,
                                       const CodeModel& model, const RcScope& scope);

}  // namespace tracecity
