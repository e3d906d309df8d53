#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tracecity/errors.hpp"
#include "tracecity/scene_service.hpp"

namespace tracecity {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string code;
  std::vector<std::string> scrum;
  std::string out;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  std::uint64_t seed = 0;
  int sprints = 4;
  int features_per_sprint = 6;
  std::string feature;
  std::string level = "sprint";
  std::vector<std::string> ids;
  std::string rc_mode = "concept";
  std::string scale = "city";
  std::vector<std::string> targets;
};

// Reproducible timestamps: honour SOURCE_DATE_EPOCH, else the epoch.
SceneOptions scene_options() {
  SceneOptions options;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    try {
      options.generated_at = iso_timestamp(std::stoll(env));
    } catch (const std::exception&) {
      throw UsageError("SOURCE_DATE_EPOCH must be an integer");
    }
  }
  return options;
}

Palette palette_from(const Options& o) {
  if (o.config.empty()) return {};
  try {
    return load_palette(read_file(o.config));
  } catch (const DataError& e) {
    throw DataError(o.config + ": " + e.what());
  }
}

CodeModel load_model(const std::string& path) {
  const auto text = read_file(path);
  try {
    return ingest_code_model(text);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

ScrumDataset load_dataset(const std::vector<std::string>& paths) {
  std::vector<XmlSource> sources;
  for (const auto& p : paths) sources.push_back({p, read_file(p)});
  return parse_scrum_xml(sources);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

int cmd_build(const Options& o, std::ostream& out) {
  auto snap = make_snapshot(load_model(o.code), load_dataset(o.scrum), palette_from(o), scene_options());
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text(dir / "scene.json", snap->scene_json);
  write_text(dir / "pbis.json", snap->pbis_json);
  write_text(dir / "warnings.txt", format_warnings(snap->warnings));
  out << "wrote " << (dir / "scene.json").string() << " (" << snap->layout.glyphs.size() << " nodes), "
      << snap->dataset.feature_count() << " features, " << snap->warnings.size() << " warnings\n";
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  SceneService service(make_snapshot(load_model(o.code), load_dataset(o.scrum), palette_from(o), scene_options()));
  HttpServer server(service, o.static_dir);
  const int port = server.bind(o.host, o.port);
  if (port < 0) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  out << "serving on http://" << o.host << ":" << port << "/" << std::endl;
  return server.listen() ? 0 : 3;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto model = load_model(o.code);
  const auto dataset = simulate_scrum(model, {o.sprints, o.features_per_sprint, o.seed});
  write_text(o.out, serialize_scrum_xml(dataset));
  out << "wrote " << o.out << " (" << dataset.feature_count() << " features)\n";
  return 0;
}

int cmd_locality(const Options& o, std::ostream& out) {
  const auto model = load_model(o.code);
  const auto dataset = load_dataset(o.scrum);
  const auto index = build_index(dataset, model);
  out << locality_table(locality_report(index, model, o.feature));
  return 0;
}

int cmd_rc(const Options& o, std::ostream& out) {
  const auto model = load_model(o.code);
  const auto dataset = load_dataset(o.scrum);
  const auto index = build_index(dataset, model);

  RcScope scope;
  if (o.rc_mode == "concept") {
    scope.mode = RcMode::Concept;
    Selection sel;
    if (o.level == "feature") {
      sel.level = SelectionLevel::Feature;
    } else if (o.level == "sprint") {
      sel.level = SelectionLevel::Sprint;
    } else {
      sel.level = SelectionLevel::Release;
    }
    if (o.ids.empty()) throw UsageError("--id is required in concept mode");
    sel.ids.insert(o.ids.begin(), o.ids.end());
    scope.selection = std::move(sel);
  }
  if (o.scale == "building") {
    scope.scale = RcScale::Building;
    for (const auto& t : o.targets) scope.target_classes.insert(QName(t));
  }
  out << rc_table(rc_map(index, dataset, model, scope));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace Scrum features to code and lay the code base out as a 3D city"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "JSON colour overrides")->check(CLI::ExistingFile);

  auto add_inputs = [&](CLI::App* sub, bool scrum_required) {
    sub->add_option("--code", o.code, "Code-model JSON")->required()->check(CLI::ExistingFile);
    auto* scrum = sub->add_option("--scrum", o.scrum, "Scrum XML file(s)")->check(CLI::ExistingFile);
    if (scrum_required) scrum->required();
  };

  auto* build = app.add_subcommand("build", "Write scene.json, pbis.json and warnings.txt");
  add_inputs(build, false);
  build->add_option("--out", o.out, "Output directory")->required();

  auto* serve = app.add_subcommand("serve", "Serve the JSON query API");
  add_inputs(serve, false);
  serve->add_option("--port", o.port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--static", o.static_dir, "Directory with the built viewer")->check(CLI::ExistingDirectory);

  auto* simulate = app.add_subcommand("simulate", "Generate simulated Scrum data for a code model");
  simulate->add_option("--code", o.code, "Code-model JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--seed", o.seed, "RNG seed")->required();
  simulate->add_option("--sprints", o.sprints, "Number of sprints")->check(CLI::NonNegativeNumber);
  simulate->add_option("--features-per-sprint", o.features_per_sprint, "Features per sprint")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--out", o.out, "Output XML file")->required();

  auto* report = app.add_subcommand("report", "Plain-text analyses");
  report->require_subcommand(1);
  auto* locality = report->add_subcommand("locality", "Where a feature is implemented");
  add_inputs(locality, true);
  locality->add_option("--feature", o.feature, "Feature id")->required();
  auto* rc = report->add_subcommand("rc", "Remaining/completed work per class");
  add_inputs(rc, true);
  rc->add_option("--mode", o.rc_mode, "concept or artefact")->check(CLI::IsMember({"concept", "artefact"}));
  rc->add_option("--level", o.level, "feature, sprint or release")
      ->check(CLI::IsMember({"feature", "sprint", "release"}));
  rc->add_option("--id", o.ids, "Selected id(s)");
  rc->add_option("--scale", o.scale, "city or building")->check(CLI::IsMember({"city", "building"}));
  rc->add_option("--target", o.targets, "Class qname(s) for building scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) return cmd_build(o, out);
    if (*serve) return cmd_serve(o, out);
    if (*simulate) return cmd_simulate(o, out);
    if (*locality) return cmd_locality(o, out);
    if (*rc) return cmd_rc(o, out);
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownId& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownQName& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotAClass& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidScope& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const EmptyModel& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tracecity
