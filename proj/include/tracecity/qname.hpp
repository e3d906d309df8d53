#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tracecity {

/// Globally unique identifier of a code artefact.
///
///   package   a.b.c
///   class     a.b.c.Main
///   method    a.b.c.Main#run/0      (name and arity after the class)
///
/// Construction does not validate; use `is_valid_qname` / `validate_qname`
/// where the text comes from outside.
class QName {
 public:
  QName() = default;
  explicit QName(std::string text) : text_(std::move(text)) {}

  const std::string& str() const noexcept { return text_; }
  bool empty() const noexcept { return text_.empty(); }
  bool is_method() const noexcept { return text_.find('#') != std::string::npos; }

  /// For a method qname, the owning class part; otherwise nullopt.
  std::optional<QName> owner_class() const;

  /// First dotted segment.
  std::string_view first_segment() const noexcept;

  static QName child(const QName& container, std::string_view name);
  static QName method(const QName& cls, std::string_view name, int arity);

  friend auto operator<=>(const QName&, const QName&) = default;
  friend bool operator==(const QName&, const QName&) = default;

 private:
  std::string text_;
};

/// `[A-Za-z_$][A-Za-z0-9_$]*`
bool is_identifier(std::string_view segment) noexcept;

/// Full grammar check: dotted identifier segments, optionally followed by a
/// single `#name/arity` suffix with a non-negative decimal arity.
bool is_valid_qname(std::string_view text) noexcept;

/// Throws BadIdentifier with `context` in the message when invalid.
void validate_qname(std::string_view text, std::string_view context);

}  // namespace tracecity

template <>
struct std::hash<tracecity::QName> {
  std::size_t operator()(const tracecity::QName& q) const noexcept {
    return std::hash<std::string>{}(q.str());
  }
};
