#include "tracecity/code_model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "tracecity/errors.hpp"

namespace tracecity {

using nlohmann::json;

namespace {

// Parsed-but-unflattened tree; only lives during ingestion.
struct RawMethod {
  std::string name;
  int arity;
  std::int64_t loc;
};

struct RawClass {
  std::string name;
  ClassKind kind;
  std::int64_t loc;
  std::int64_t noa;
  std::vector<RawMethod> methods;
};

struct RawPackage {
  std::string name;
  std::vector<RawPackage> packages;
  std::vector<RawClass> classes;
};

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(path + "/" + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

const json& require_object(const json& value, const std::string& path) {
  if (!value.is_object()) throw SchemaError(path, "expected object");
  return value;
}

const json& require_array(const json& obj, const std::string& path, const char* key) {
  const auto& value = require(obj, path, key);
  if (!value.is_array()) throw SchemaError(path + "/" + key, "expected array");
  return value;
}

std::string require_string(const json& obj, const std::string& path, const char* key) {
  const auto& value = require(obj, path, key);
  if (!value.is_string()) throw SchemaError(path + "/" + key, "expected string");
  return value.get<std::string>();
}

std::int64_t require_count(const json& obj, const std::string& path, const char* key) {
  const auto& value = require(obj, path, key);
  if (!value.is_number_integer()) throw SchemaError(path + "/" + key, "expected integer");
  const auto n = value.get<std::int64_t>();
  if (n < 0) throw SchemaError(path + "/" + key, "must be non-negative");
  return n;
}

std::string require_identifier(const json& obj, const std::string& path) {
  auto name = require_string(obj, path, "name");
  if (!is_identifier(name)) throw BadIdentifier(path + "/name: invalid identifier '" + name + "'");
  return name;
}

RawClass parse_class(const json& value, const std::string& path) {
  require_object(value, path);
  check_keys(value, path, {"name", "kind", "loc", "noa", "methods"});
  RawClass cls;
  cls.name = require_identifier(value, path);
  const auto kind = require_string(value, path, "kind");
  if (kind == "class") {
    cls.kind = ClassKind::Class;
  } else if (kind == "interface") {
    cls.kind = ClassKind::Interface;
  } else {
    throw SchemaError(path + "/kind", "expected \"class\" or \"interface\"");
  }
  cls.loc = require_count(value, path, "loc");
  cls.noa = require_count(value, path, "noa");

  const auto& methods = require_array(value, path, "methods");
  std::set<std::pair<std::string, int>> seen;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto mpath = path + "/methods/" + std::to_string(i);
    const auto& m = require_object(methods[i], mpath);
    check_keys(m, mpath, {"name", "arity", "loc"});
    RawMethod method;
    method.name = require_identifier(m, mpath);
    const auto arity = require_count(m, mpath, "arity");
    if (arity > 999'999'999) throw SchemaError(mpath + "/arity", "out of range");
    method.arity = static_cast<int>(arity);
    method.loc = require_count(m, mpath, "loc");
    if (!seen.emplace(method.name, method.arity).second) {
      throw DuplicateName(mpath + ": duplicate method " + method.name + "/" + std::to_string(method.arity) +
                          " in class " + cls.name);
    }
    cls.methods.push_back(std::move(method));
  }
  return cls;
}

RawPackage parse_package(const json& value, const std::string& path) {
  require_object(value, path);
  check_keys(value, path, {"name", "packages", "classes"});
  RawPackage pkg;
  pkg.name = require_identifier(value, path);
  const auto& packages = require_array(value, path, "packages");
  for (std::size_t i = 0; i < packages.size(); ++i) {
    pkg.packages.push_back(parse_package(packages[i], path + "/packages/" + std::to_string(i)));
  }
  const auto& classes = require_array(value, path, "classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    pkg.classes.push_back(parse_class(classes[i], path + "/classes/" + std::to_string(i)));
  }
  return pkg;
}

}  // namespace

class CodeModelBuilder {
 public:
  explicit CodeModelBuilder(std::string project) { model_.project_ = std::move(project); }

  void add_roots(std::vector<RawPackage> roots, const std::string& path) {
    sort_and_check(roots, {}, path);
    for (auto& root : roots) model_.roots_.push_back(add_package(std::move(root), std::nullopt, 1));
  }

  CodeModel finish() {
    std::sort(model_.roots_.begin(), model_.roots_.end(),
              [&](PackageId a, PackageId b) { return model_.packages_[a].name < model_.packages_[b].name; });
    return std::move(model_);
  }

  static void sort_and_check(std::vector<RawPackage>& packages, std::vector<RawClass>* classes,
                             const std::string& path) {
    auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
    std::stable_sort(packages.begin(), packages.end(), by_name);
    std::set<std::string> names;
    for (const auto& p : packages) {
      if (!names.insert(p.name).second) throw DuplicateName(path + ": duplicate sibling name '" + p.name + "'");
    }
    if (classes) {
      std::stable_sort(classes->begin(), classes->end(), by_name);
      for (const auto& c : *classes) {
        if (!names.insert(c.name).second) throw DuplicateName(path + ": duplicate sibling name '" + c.name + "'");
      }
    }
  }

 private:
  PackageId add_package(RawPackage raw, std::optional<PackageId> parent, int nl) {
    const auto id = static_cast<PackageId>(model_.packages_.size());
    PackageNode node;
    node.name = raw.name;
    node.nl = nl;
    node.parent = parent;
    if (raw.name == kDefaultPackage) {
      node.qname = QName(std::string(kDefaultPackage));
    } else {
      node.qname = parent ? QName::child(model_.packages_[*parent].qname, raw.name) : QName(raw.name);
    }
    model_.packages_.push_back(node);
    index(node.qname, {ArtefactKind::Package, id});

    sort_and_check(raw.packages, &raw.classes, node.qname.str());
    // Classes of the implicit default package carry bare names.
    const QName class_prefix = raw.name == kDefaultPackage ? QName() : node.qname;
    std::vector<PackageId> subs;
    for (auto& sub : raw.packages) subs.push_back(add_package(std::move(sub), id, nl + 1));
    std::vector<ClassId> classes;
    for (auto& cls : raw.classes) classes.push_back(add_class(std::move(cls), id, class_prefix));
    model_.packages_[id].subpackages = std::move(subs);
    model_.packages_[id].classes = std::move(classes);
    return id;
  }

  ClassId add_class(RawClass raw, PackageId pkg, const QName& prefix) {
    const auto id = static_cast<ClassId>(model_.classes_.size());
    ClassNode node;
    node.name = std::move(raw.name);
    node.kind = raw.kind;
    node.loc = raw.loc;
    node.noa = raw.noa;
    node.package = pkg;
    node.qname = QName::child(prefix, node.name);
    index(node.qname, {ArtefactKind::Class, id});
    for (auto& m : raw.methods) {
      const auto mid = static_cast<MethodId>(model_.methods_.size());
      MethodNode method{std::move(m.name), m.arity, m.loc, {}, id};
      method.qname = QName::method(node.qname, method.name, method.arity);
      index(method.qname, {ArtefactKind::Method, mid});
      model_.methods_.push_back(std::move(method));
      node.methods.push_back(mid);
    }
    model_.classes_.push_back(std::move(node));
    return id;
  }

  void index(const QName& q, ArtefactRef ref) {
    if (!model_.index_.emplace(q, ref).second) throw DuplicateName("duplicate qualified name '" + q.str() + "'");
  }

  CodeModel model_;
};

std::optional<ArtefactRef> CodeModel::resolve(const QName& q) const {
  auto it = index_.find(q);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ClassId> CodeModel::resolve_class(const QName& q) const {
  auto ref = resolve(q);
  if (!ref || ref->kind != ArtefactKind::Class) return std::nullopt;
  return ref->id;
}

std::optional<ClassId> CodeModel::class_level(const QName& q) const {
  auto ref = resolve(q);
  if (!ref) return std::nullopt;
  switch (ref->kind) {
    case ArtefactKind::Class:
      return ref->id;
    case ArtefactKind::Method:
      return methods_[ref->id].owner;
    case ArtefactKind::Package:
      break;
  }
  return std::nullopt;
}

const QName& CodeModel::qname_of(ArtefactRef ref) const {
  switch (ref.kind) {
    case ArtefactKind::Package:
      return packages_.at(ref.id).qname;
    case ArtefactKind::Class:
      return classes_.at(ref.id).qname;
    case ArtefactKind::Method:
      return methods_.at(ref.id).qname;
  }
  throw Error("invalid artefact reference");
}

PackageId CodeModel::root_of(PackageId id) const {
  while (packages_.at(id).parent) id = *packages_[id].parent;
  return id;
}

std::vector<MethodId> CodeModel::methods_sorted(ClassId id) const {
  auto ids = classes_.at(id).methods;
  std::sort(ids.begin(), ids.end(), [&](MethodId a, MethodId b) { return methods_[a].qname < methods_[b].qname; });
  return ids;
}

std::vector<QName> CodeModel::enumerate(KindFilter filter) const {
  std::vector<QName> out;
  const bool want_pkg = filter == KindFilter::All || filter == KindFilter::Packages;
  const bool want_cls = filter == KindFilter::All || filter == KindFilter::Classes;
  const bool want_mth = filter == KindFilter::All || filter == KindFilter::Methods;

  auto visit_class = [&](ClassId c) {
    if (want_cls) out.push_back(classes_[c].qname);
    if (want_mth) {
      for (auto m : methods_sorted(c)) out.push_back(methods_[m].qname);
    }
  };
  auto visit = [&](auto&& self, PackageId p) -> void {
    const auto& pkg = packages_[p];
    if (want_pkg) out.push_back(pkg.qname);
    // Merge subpackages and classes by name; both lists are already sorted.
    auto sp = pkg.subpackages.begin();
    auto cl = pkg.classes.begin();
    while (sp != pkg.subpackages.end() || cl != pkg.classes.end()) {
      const bool take_pkg = cl == pkg.classes.end() ||
                            (sp != pkg.subpackages.end() && packages_[*sp].name < classes_[*cl].name);
      if (take_pkg) {
        self(self, *sp++);
      } else {
        visit_class(*cl++);
      }
    }
  };
  for (auto r : roots_) visit(visit, r);
  return out;
}

CodeModel ingest_code_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  require_object(doc, "");
  check_keys(doc, "", {"project", "packages", "classes"});
  CodeModelBuilder builder(require_string(doc, "", "project"));

  std::vector<RawPackage> roots;
  const auto& packages = require_array(doc, "", "packages");
  for (std::size_t i = 0; i < packages.size(); ++i) {
    roots.push_back(parse_package(packages[i], "/packages/" + std::to_string(i)));
  }
  if (auto it = doc.find("classes"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("/classes", "expected array");
    if (!it->empty()) {
      RawPackage implicit{std::string(kDefaultPackage), {}, {}};
      for (std::size_t i = 0; i < it->size(); ++i) {
        implicit.classes.push_back(parse_class((*it)[i], "/classes/" + std::to_string(i)));
      }
      roots.push_back(std::move(implicit));
    }
  }
  builder.add_roots(std::move(roots), "");
  return builder.finish();
}

std::optional<ArtefactRef> resolve_qname(const CodeModel& model, const QName& q) { return model.resolve(q); }

namespace {

json class_to_json(const CodeModel& model, ClassId id) {
  const auto& c = model.cls(id);
  json methods = json::array();
  for (auto m : c.methods) {
    const auto& method = model.method(m);
    methods.push_back({{"name", method.name}, {"arity", method.arity}, {"loc", method.loc}});
  }
  return {{"name", c.name},
          {"kind", c.kind == ClassKind::Interface ? "interface" : "class"},
          {"loc", c.loc},
          {"noa", c.noa},
          {"methods", std::move(methods)}};
}

json package_to_json(const CodeModel& model, PackageId id) {
  const auto& p = model.package(id);
  json packages = json::array();
  for (auto s : p.subpackages) packages.push_back(package_to_json(model, s));
  json classes = json::array();
  for (auto c : p.classes) classes.push_back(class_to_json(model, c));
  return {{"name", p.name}, {"packages", std::move(packages)}, {"classes", std::move(classes)}};
}

}  // namespace

std::string serialize_code_model(const CodeModel& model) {
  json packages = json::array();
  json root_classes = json::array();
  for (auto r : model.roots()) {
    if (model.package(r).name == kDefaultPackage) {
      for (auto c : model.package(r).classes) root_classes.push_back(class_to_json(model, c));
    } else {
      packages.push_back(package_to_json(model, r));
    }
  }
  json doc{{"project", model.project()}, {"packages", std::move(packages)}};
  if (!root_classes.empty()) doc["classes"] = std::move(root_classes);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace tracecity
