#include "tracecity/qname.hpp"

#include "tracecity/errors.hpp"

namespace tracecity {

namespace {

bool is_ident_start(char c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == '$';
}

bool is_ident_char(char c) noexcept { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_dotted_path(std::string_view text) noexcept {
  if (text.empty()) return false;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    const auto seg = text.substr(start, dot == std::string_view::npos ? text.size() - start : dot - start);
    if (!is_identifier(seg)) return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

}  // namespace

std::optional<QName> QName::owner_class() const {
  const auto hash = text_.find('#');
  if (hash == std::string::npos) return std::nullopt;
  return QName(text_.substr(0, hash));
}

std::string_view QName::first_segment() const noexcept {
  std::string_view view(text_);
  const auto end = view.find_first_of(".#");
  return end == std::string_view::npos ? view : view.substr(0, end);
}

QName QName::child(const QName& container, std::string_view name) {
  if (container.empty()) return QName(std::string(name));
  std::string text = container.str();
  text += '.';
  text += name;
  return QName(std::move(text));
}

QName QName::method(const QName& cls, std::string_view name, int arity) {
  std::string text = cls.str();
  text += '#';
  text += name;
  text += '/';
  text += std::to_string(arity);
  return QName(std::move(text));
}

bool is_identifier(std::string_view segment) noexcept {
  if (segment.empty() || !is_ident_start(segment.front())) return false;
  for (char c : segment.substr(1)) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

bool is_valid_qname(std::string_view text) noexcept {
  const auto hash = text.find('#');
  if (hash == std::string_view::npos) return text.find('/') == std::string_view::npos && is_dotted_path(text);
  if (text.find('#', hash + 1) != std::string_view::npos) return false;
  if (!is_dotted_path(text.substr(0, hash))) return false;

  const auto tail = text.substr(hash + 1);
  const auto slash = tail.find('/');
  if (slash == std::string_view::npos || tail.find('/', slash + 1) != std::string_view::npos) return false;
  if (!is_identifier(tail.substr(0, slash))) return false;
  const auto arity = tail.substr(slash + 1);
  if (arity.empty() || arity.size() > 9) return false;
  for (char c : arity) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

void validate_qname(std::string_view text, std::string_view context) {
  if (!is_valid_qname(text)) {
    throw BadIdentifier(std::string(context) + ": invalid qualified name '" + std::string(text) + "'");
  }
}

}  // namespace tracecity
