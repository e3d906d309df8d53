#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tracecity/qname.hpp"

namespace tracecity {

enum class ArtefactKind { Package, Class, Method };
enum class ClassKind { Class, Interface };

/// Name of the implicit package that holds classes declared at model root.
inline constexpr std::string_view kDefaultPackage = "<default>";

using PackageId = std::uint32_t;
using ClassId = std::uint32_t;
using MethodId = std::uint32_t;

struct ArtefactRef {
  ArtefactKind kind;
  std::uint32_t id;

  friend bool operator==(const ArtefactRef&, const ArtefactRef&) = default;
};

struct MethodNode {
  std::string name;
  int arity = 0;
  std::int64_t loc = 0;
  QName qname;
  ClassId owner = 0;
};

struct ClassNode {
  std::string name;
  ClassKind kind = ClassKind::Class;
  std::int64_t loc = 0;
  std::int64_t noa = 0;
  std::vector<MethodId> methods;  // input order
  QName qname;
  PackageId package = 0;

  std::int64_t nom() const noexcept { return static_cast<std::int64_t>(methods.size()); }
};

struct PackageNode {
  std::string name;
  int nl = 1;
  std::optional<PackageId> parent;
  std::vector<PackageId> subpackages;  // ascending name
  std::vector<ClassId> classes;        // ascending name
  QName qname;
};

enum class KindFilter { All, Packages, Classes, Methods };

/// Containment model of a code base: packages, classes/interfaces, methods.
/// Immutable once built; nodes live in flat arenas addressed by id.
class CodeModel {
 public:
  CodeModel() = default;

  const std::string& project() const noexcept { return project_; }
  std::span<const PackageId> roots() const noexcept { return roots_; }

  const PackageNode& package(PackageId id) const { return packages_.at(id); }
  const ClassNode& cls(ClassId id) const { return classes_.at(id); }
  const MethodNode& method(MethodId id) const { return methods_.at(id); }

  std::span<const PackageNode> packages() const noexcept { return packages_; }
  std::span<const ClassNode> classes() const noexcept { return classes_; }
  std::span<const MethodNode> methods() const noexcept { return methods_; }

  std::size_t artefact_count() const noexcept { return index_.size(); }

  std::optional<ArtefactRef> resolve(const QName& q) const;
  std::optional<ClassId> resolve_class(const QName& q) const;

  /// The class a qname denotes at class level: the class itself, or the
  /// owning class of a method. nullopt for packages and unknown names.
  std::optional<ClassId> class_level(const QName& q) const;

  const QName& qname_of(ArtefactRef ref) const;

  /// Root-level ancestor of a package.
  PackageId root_of(PackageId id) const;

  /// Depth-first, siblings in ascending name order. A package is followed by
  /// its children; a class by its methods (ascending qname).
  std::vector<QName> enumerate(KindFilter filter = KindFilter::All) const;

  /// Method ids of a class sorted by qname.
  std::vector<MethodId> methods_sorted(ClassId id) const;

  friend class CodeModelBuilder;

 private:
  std::string project_;
  std::vector<PackageId> roots_;
  std::vector<PackageNode> packages_;
  std::vector<ClassNode> classes_;
  std::vector<MethodNode> methods_;
  std::unordered_map<QName, ArtefactRef> index_;
};

/// Parses the code-model JSON interchange document.
///
/// Throws SchemaError (with a JSON-pointer path), DuplicateName, or
/// BadIdentifier.
CodeModel ingest_code_model(std::string_view document);

/// Inverse of ingest_code_model. `nom` and `nl` are not written.
std::string serialize_code_model(const CodeModel& model);

std::optional<ArtefactRef> resolve_qname(const CodeModel& model, const QName& q);

/// Reads a whole file; throws DataError when unreadable.
std::string read_file(const std::string& path);

}  // namespace tracecity
