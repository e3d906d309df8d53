#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tracecity/city_layout.hpp"
#include "tracecity/code_model.hpp"
#include "tracecity/palette.hpp"
#include "tracecity/rc_view.hpp"
#include "tracecity/scrum_data.hpp"
#include "tracecity/trace_index.hpp"

namespace tracecity {

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

inline constexpr int kSceneSchemaVersion = 1;

struct SceneOptions {
  /// ISO 8601 UTC timestamp written verbatim into the document.
  std::string generated_at = "1970-01-01T00:00:00Z";
};

/// Formats seconds since the epoch as `YYYY-MM-DDTHH:MM:SSZ`.
std::string iso_timestamp(std::int64_t epoch_seconds);

/// Canonical scene document: sorted keys, two-space indent, trailing newline.
/// Byte-stable for a given model, palette, and options.
std::string export_scene(const CityLayout& layout, const CodeModel& model, const SceneOptions& options = {});

/// Release -> sprint -> feature tree with titles and categories.
std::string export_pbis(const ScrumDataset& dataset);

std::string format_warnings(const std::vector<DanglingRef>& warnings);

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

struct Overlay {
  QNameSet highlight;
  QNameSet transparent;  // classes ghosted so highlighted methods show through
  std::map<QName, RcState> rc;
};

/// highlight = forward(sel); transparent = owners of highlighted methods.
Overlay selection_overlay(const TraceIndex& index, const Selection& sel);

nlohmann::json overlay_json(const Overlay& overlay, const Palette& palette);

/// Everything the viewer's detail pane shows about one feature.
nlohmann::json feature_payload(const ScrumDataset& dataset, const TraceIndex& index, const Feature& feature);

/// Metrics, linked features (full payloads), and related artefacts of q. For
/// a method, related artefacts also include those of its owning class.
/// Throws UnknownQName.
nlohmann::json artefact_detail(const ScrumDataset& dataset, const TraceIndex& index, const CodeModel& model,
                               const QName& q);

enum class SearchMode { Exact, All };

struct SearchResult {
  std::vector<QName> matches;
  SearchMode mode = SearchMode::Exact;
};

/// Exact: qname equality (at most one match). All: case-insensitive
/// substring over qnames in enumeration order. Throws EmptyQuery when the
/// trimmed query is empty.
SearchResult search(const CodeModel& model, std::string_view query, SearchMode mode);

// ---------------------------------------------------------------------------
// Service
// ---------------------------------------------------------------------------

/// Immutable bundle every query runs against.
struct Snapshot {
  CodeModel model;
  ScrumDataset dataset;
  TraceIndex index;
  CityLayout layout;
  Palette palette;
  std::vector<DanglingRef> warnings;
  std::string scene_json;
  std::string pbis_json;
  std::unordered_map<QName, std::size_t> glyph_of;  // qname -> layout.glyphs index
};

struct InputPaths {
  std::string code;
  std::vector<std::string> scrum;
};

std::shared_ptr<const Snapshot> make_snapshot(CodeModel model, ScrumDataset dataset, Palette palette = {},
                                              SceneOptions options = {});

/// Reads and builds everything. Throws DataError on bad input.
std::shared_ptr<const Snapshot> load_snapshot(const InputPaths& paths, Palette palette = {},
                                              SceneOptions options = {});

using QueryParams = std::multimap<std::string, std::string>;

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Routes one GET request. Pure: the same snapshot, path, and params always
/// produce the same response.
ApiResponse handle_api(const Snapshot& snapshot, std::string_view path, const QueryParams& params);

/// Holds the current snapshot; readers take a reference-counted copy, reloads
/// swap it atomically.
class SceneService {
 public:
  explicit SceneService(std::shared_ptr<const Snapshot> initial) : current_(std::move(initial)) {}

  std::shared_ptr<const Snapshot> snapshot() const {
    std::lock_guard lock(mutex_);
    return current_;
  }

  void replace(std::shared_ptr<const Snapshot> next) {
    std::lock_guard lock(mutex_);
    current_ = std::move(next);
  }

  /// Rebuilds from disk; one reload at a time. The old snapshot stays live
  /// when loading fails.
  void reload(const InputPaths& paths, const Palette& palette, const SceneOptions& options);

  ApiResponse handle(std::string_view path, const QueryParams& params) const {
    return handle_api(*snapshot(), path, params);
  }

 private:
  mutable std::mutex mutex_;
  std::mutex reload_mutex_;
  std::shared_ptr<const Snapshot> current_;
};

/// Thin cpp-httplib front end over a SceneService.
class HttpServer {
 public:
  HttpServer(SceneService& service, std::string static_dir = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Reports and CLI
// ---------------------------------------------------------------------------

std::string locality_table(const LocalityReport& report);
std::string rc_table(const std::map<QName, RcState>& states);

/// Entry point behind the `tracecity` executable. Exit codes: 0 ok, 1 usage,
/// 2 input data, 3 internal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tracecity
