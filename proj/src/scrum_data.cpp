#include "tracecity/scrum_data.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "tracecity/code_model.hpp"
#include "tracecity/errors.hpp"

namespace tracecity {

namespace pt = boost::property_tree;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

Hours Hours::parse(std::string_view text) {
  const auto fail = [&] { return SchemaError("", "invalid hours value '" + std::string(text) + "'"); };
  const auto dot = text.find('.');
  const auto whole = text.substr(0, dot);
  const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || whole.size() > 12) throw fail();
  if (dot != std::string_view::npos && (frac.empty() || frac.size() > 3)) throw fail();
  auto all_digits = [](std::string_view s) { return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }); };
  if (!all_digits(whole) || !all_digits(frac)) throw fail();

  std::int64_t millis = 0;
  for (char c : whole) millis = millis * 10 + (c - '0');
  millis *= kScale;
  std::int64_t scale = kScale / 10;
  for (char c : frac) {
    millis += (c - '0') * scale;
    scale /= 10;
  }
  return Hours(millis);
}

std::string Hours::to_string() const {
  std::string out = std::to_string(millis_ / kScale);
  auto frac = millis_ % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

Date parse_date(std::string_view text) {
  const auto fail = [&] { return SchemaError("", "invalid date '" + std::string(text) + "', expected YYYY-MM-DD"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw fail();
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [&](std::string_view s, auto& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw fail();
  };
  parse(text.substr(0, 4), y);
  parse(text.substr(5, 2), m);
  parse(text.substr(8, 2), d);
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw fail();
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::string_view to_string(EntryType t) noexcept { return t == EntryType::Completed ? "completed" : "remaining"; }

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::NewFeature:
      return "new";
    case Category::BugFix:
      return "bug";
    case Category::Enhancement:
      return "enhancement";
  }
  return "new";
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

ScrumDataset::ScrumDataset(std::string project, std::vector<Release> releases)
    : project_(std::move(project)), releases_(std::move(releases)) {
  std::set<std::string> release_ids;
  std::set<std::string> sprint_ids;
  for (std::size_t r = 0; r < releases_.size(); ++r) {
    const auto& release = releases_[r];
    if (!release_ids.insert(release.id).second) throw SchemaError("", "duplicate release id '" + release.id + "'");
    std::set<int> numbers;
    for (std::size_t s = 0; s < release.sprints.size(); ++s) {
      const auto& sprint = release.sprints[s];
      if (!sprint_ids.insert(sprint.id).second) throw SchemaError("", "duplicate sprint id '" + sprint.id + "'");
      if (!numbers.insert(sprint.number).second) {
        throw SchemaError("", "sprint number " + std::to_string(sprint.number) + " repeated in release '" +
                                  release.id + "'");
      }
      if (std::chrono::sys_days{sprint.start} > std::chrono::sys_days{sprint.end}) {
        throw SchemaError("", "sprint '" + sprint.id + "' starts after it ends");
      }
      for (std::size_t f = 0; f < sprint.features.size(); ++f) {
        const auto& feature = sprint.features[f];
        if (!feature_index_.emplace(feature.id, FeatureLocation{r, s, f}).second) {
          throw DuplicateFeatureId("duplicate feature id '" + feature.id + "'");
        }
      }
    }
  }
}

const Feature* ScrumDataset::find_feature(std::string_view id) const {
  auto it = feature_index_.find(id);
  if (it == feature_index_.end()) return nullptr;
  const auto& loc = it->second;
  return &releases_[loc.release].sprints[loc.sprint].features[loc.feature];
}

const Sprint* ScrumDataset::find_sprint(std::string_view id) const {
  for (const auto& r : releases_) {
    for (const auto& s : r.sprints) {
      if (s.id == id) return &s;
    }
  }
  return nullptr;
}

const Release* ScrumDataset::find_release(std::string_view id) const {
  for (const auto& r : releases_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const std::string& ScrumDataset::sprint_of(std::string_view feature_id) const {
  auto it = feature_index_.find(feature_id);
  if (it == feature_index_.end()) throw UnknownId("unknown feature '" + std::string(feature_id) + "'");
  return releases_[it->second.release].sprints[it->second.sprint].id;
}

// ---------------------------------------------------------------------------
// XML reading
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kAttr = "<xmlattr>";

class ElementReader {
 public:
  ElementReader(const pt::ptree& node, std::string path) : node_(node), path_(std::move(path)) {}

  void allow_attributes(std::initializer_list<std::string_view> names) const {
    if (auto attrs = node_.get_child_optional(kAttr)) {
      for (const auto& [key, _] : *attrs) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
          throw SchemaError(path_ + "/@" + key, "unknown attribute");
        }
      }
    }
  }

  std::string attr(const char* name) const {
    auto value = node_.get_optional<std::string>(pt::ptree::path_type(std::string(kAttr) + "/" + name, '/'));
    if (!value) throw SchemaError(path_ + "/@" + name, "missing attribute");
    return *value;
  }

  std::string attr_or(const char* name, std::string fallback) const {
    auto value = node_.get_optional<std::string>(pt::ptree::path_type(std::string(kAttr) + "/" + name, '/'));
    return value ? *value : fallback;
  }

  int int_attr(const char* name) const {
    const auto text = attr(name);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw SchemaError(path_ + "/@" + name, "expected integer, got '" + text + "'");
    }
    return value;
  }

  template <class Fn>
  auto with_path(const char* name, Fn&& fn) const {
    try {
      return fn();
    } catch (const SchemaError& e) {
      throw SchemaError(path_ + "/@" + name, e.what());
    }
  }

  /// Child elements in document order, skipping attributes and comments.
  template <class Fn>
  void for_each_child(Fn&& fn) const {
    std::size_t i = 0;
    for (const auto& [key, child] : node_) {
      if (key == kAttr || key == "<xmlcomment>") continue;
      fn(key, ElementReader(child, path_ + "/" + key + "[" + std::to_string(i++) + "]"));
    }
  }

  const std::string& text() const { return node_.data(); }
  const std::string& path() const noexcept { return path_; }

 private:
  const pt::ptree& node_;
  std::string path_;
};

QName read_qname(const ElementReader& el) {
  auto text = el.attr("qname");
  if (!is_valid_qname(text)) throw BadIdentifier(el.path() + "/@qname: invalid qualified name '" + text + "'");
  return QName(std::move(text));
}

std::vector<QName> read_refs(const ElementReader& list) {
  list.allow_attributes({});
  std::vector<QName> refs;
  std::set<QName> seen;
  list.for_each_child([&](const std::string& key, const ElementReader& el) {
    if (key != "ref") throw SchemaError(el.path(), "unexpected element");
    el.allow_attributes({"qname"});
    auto q = read_qname(el);
    if (!seen.insert(q).second) throw SchemaError(el.path(), "duplicate reference '" + q.str() + "'");
    refs.push_back(std::move(q));
  });
  return refs;
}

Category parse_category(const ElementReader& el) {
  const auto text = el.attr("category");
  if (text == "new") return Category::NewFeature;
  if (text == "bug") return Category::BugFix;
  if (text == "enhancement") return Category::Enhancement;
  throw SchemaError(el.path() + "/@category", "expected new|bug|enhancement, got '" + text + "'");
}

Feature read_feature(const ElementReader& el) {
  el.allow_attributes({"id", "title", "category", "priority", "estimateHours", "developer"});
  Feature f;
  f.id = el.attr("id");
  if (f.id.empty()) throw SchemaError(el.path() + "/@id", "empty feature id");
  f.title = el.attr("title");
  f.category = parse_category(el);
  f.priority = el.int_attr("priority");
  f.estimate = el.with_path("estimateHours", [&] { return Hours::parse(el.attr("estimateHours")); });
  f.developer = el.attr_or("developer", "");

  std::set<std::string> seen_sections;
  el.for_each_child([&](const std::string& key, const ElementReader& child) {
    if (!seen_sections.insert(key).second) throw SchemaError(child.path(), "repeated section");
    if (key == "description") {
      child.allow_attributes({});
      f.description = child.text();
    } else if (key == "classRefs") {
      f.class_refs = read_refs(child);
    } else if (key == "methodRefs") {
      f.method_refs = read_refs(child);
    } else if (key == "tasks") {
      child.allow_attributes({});
      child.for_each_child([&](const std::string& k, const ElementReader& task) {
        if (k != "task") throw SchemaError(task.path(), "unexpected element");
        task.allow_attributes({});
        f.tasks.push_back(task.text());
      });
    } else if (key == "workEntries") {
      child.allow_attributes({});
      child.for_each_child([&](const std::string& k, const ElementReader& entry) {
        if (k != "entry") throw SchemaError(entry.path(), "unexpected element");
        entry.allow_attributes({"qname", "date", "hours", "type"});
        WorkEntry w;
        w.qname = read_qname(entry);
        w.date = entry.with_path("date", [&] { return parse_date(entry.attr("date")); });
        w.hours = entry.with_path("hours", [&] { return Hours::parse(entry.attr("hours")); });
        const auto type = entry.attr("type");
        if (type == "remaining") {
          w.type = EntryType::Remaining;
        } else if (type == "completed") {
          w.type = EntryType::Completed;
        } else {
          throw SchemaError(entry.path() + "/@type", "expected remaining|completed, got '" + type + "'");
        }
        f.work_entries.push_back(std::move(w));
      });
    } else {
      throw SchemaError(child.path(), "unexpected element");
    }
  });
  return f;
}

Sprint read_sprint(const ElementReader& el) {
  el.allow_attributes({"id", "name", "number", "start", "end"});
  Sprint s;
  s.id = el.attr("id");
  s.name = el.attr("name");
  s.number = el.int_attr("number");
  if (s.number <= 0) throw SchemaError(el.path() + "/@number", "sprint number must be positive");
  s.start = el.with_path("start", [&] { return parse_date(el.attr("start")); });
  s.end = el.with_path("end", [&] { return parse_date(el.attr("end")); });
  std::set<std::string> ids;
  el.for_each_child([&](const std::string& key, const ElementReader& child) {
    if (key != "feature") throw SchemaError(child.path(), "unexpected element");
    auto f = read_feature(child);
    if (!ids.insert(f.id).second) throw DuplicateFeatureId("duplicate feature id '" + f.id + "' in sprint " + s.id);
    s.features.push_back(std::move(f));
  });
  return s;
}

Release read_release(const ElementReader& el) {
  el.allow_attributes({"id", "name"});
  Release r;
  r.id = el.attr("id");
  r.name = el.attr("name");
  el.for_each_child([&](const std::string& key, const ElementReader& child) {
    if (key != "sprint") throw SchemaError(child.path(), "unexpected element");
    r.sprints.push_back(read_sprint(child));
  });
  return r;
}

// property_tree's reader does not check that closing tags match, so a
// mismatched tag would otherwise surface as "unexpected end of data" at EOF.
void check_well_formed(const XmlSource& source) {
  namespace rx = pt::detail::rapidxml;
  std::vector<char> buffer(source.bytes.begin(), source.bytes.end());
  buffer.push_back('\0');
  rx::xml_document<char> doc;
  try {
    doc.parse<rx::parse_validate_closing_tags | rx::parse_non_destructive>(buffer.data());
  } catch (const rx::parse_error& e) {
    const auto line = std::count(buffer.data(), e.where<char>(), '\n') + 1;
    throw XmlError(source.name, static_cast<std::size_t>(line), e.what());
  }
}

pt::ptree load_xml(const XmlSource& source) {
  check_well_formed(source);
  std::istringstream in(source.bytes);
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw XmlError(source.name, e.line(), e.message());
  }
  return tree;
}

}  // namespace

ScrumDataset parse_scrum_xml(const std::vector<XmlSource>& documents) {
  std::string project;
  std::vector<Release> releases;

  auto merge = [&](Release incoming) {
    auto it = std::find_if(releases.begin(), releases.end(), [&](const Release& r) { return r.id == incoming.id; });
    if (it == releases.end()) {
      releases.push_back(std::move(incoming));
    } else {
      for (auto& s : incoming.sprints) it->sprints.push_back(std::move(s));
    }
  };

  for (const auto& source : documents) {
    const auto tree = load_xml(source);
    const pt::ptree* root = nullptr;
    for (const auto& [key, child] : tree) {
      if (key == "<xmlcomment>") continue;
      if (key != "scrum" || root) throw SchemaError(source.name + ":/" + key, "expected a single <scrum> root");
      root = &child;
    }
    if (!root) throw SchemaError(source.name, "missing <scrum> root element");

    try {
      ElementReader scrum(*root, source.name + ":/scrum");
      scrum.allow_attributes({"project"});
      if (project.empty()) project = scrum.attr_or("project", "");
      scrum.for_each_child([&](const std::string& key, const ElementReader& child) {
        if (key == "release") {
          merge(read_release(child));
        } else if (key == "releases") {
          child.allow_attributes({});
          child.for_each_child([&](const std::string& k, const ElementReader& rel) {
            if (k != "release") throw SchemaError(rel.path(), "unexpected element");
            merge(read_release(rel));
          });
        } else {
          throw SchemaError(child.path(), "unexpected element");
        }
      });
    } catch (const DuplicateFeatureId& e) {
      throw DuplicateFeatureId(source.name + ": " + e.what());
    }
  }
  return ScrumDataset(std::move(project), std::move(releases));
}

// ---------------------------------------------------------------------------
// XML writing
// ---------------------------------------------------------------------------

namespace {

void escape_into(std::string& out, std::string_view text, bool attribute) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += attribute ? "&quot;" : "\"";
        break;
      case '\n':
        out += attribute ? "&#10;" : "\n";
        break;
      case '\t':
        out += attribute ? "&#9;" : "\t";
        break;
      case '\r':
        out += "&#13;";
        break;
      default:
        out += c;
    }
  }
}

class XmlWriter {
 public:
  void open(std::string_view name, std::initializer_list<std::pair<std::string_view, std::string>> attrs,
            bool self_close = false) {
    indent();
    out_ += '<';
    out_ += name;
    for (const auto& [key, value] : attrs) {
      out_ += ' ';
      out_ += key;
      out_ += "=\"";
      escape_into(out_, value, true);
      out_ += '"';
    }
    out_ += self_close ? "/>\n" : ">\n";
    if (!self_close) ++depth_;
  }

  void close(std::string_view name) {
    --depth_;
    indent();
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }

  void text_element(std::string_view name, std::string_view text) {
    indent();
    out_ += '<';
    out_ += name;
    out_ += '>';
    escape_into(out_, text, false);
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }

  void empty(std::string_view name) { open(name, {}, true); }

  std::string& buffer() { return out_; }

 private:
  void indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

  std::string out_;
  int depth_ = 0;
};

void write_refs(XmlWriter& w, std::string_view name, const std::vector<QName>& refs) {
  if (refs.empty()) return w.empty(name);
  w.open(name, {});
  for (const auto& q : refs) w.open("ref", {{"qname", q.str()}}, true);
  w.close(name);
}

}  // namespace

std::string serialize_scrum_xml(const ScrumDataset& dataset) {
  XmlWriter w;
  w.buffer() = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  w.open("scrum", {{"project", dataset.project()}});
  if (dataset.releases().empty()) {
    w.empty("releases");
  } else {
    w.open("releases", {});
    for (const auto& r : dataset.releases()) {
      w.open("release", {{"id", r.id}, {"name", r.name}}, r.sprints.empty());
      if (r.sprints.empty()) continue;
      for (const auto& s : r.sprints) {
        w.open("sprint",
               {{"id", s.id},
                {"name", s.name},
                {"number", std::to_string(s.number)},
                {"start", format_date(s.start)},
                {"end", format_date(s.end)}},
               s.features.empty());
        if (s.features.empty()) continue;
        for (const auto& f : s.features) {
          w.open("feature", {{"id", f.id},
                             {"title", f.title},
                             {"category", std::string(to_string(f.category))},
                             {"priority", std::to_string(f.priority)},
                             {"estimateHours", f.estimate.to_string()},
                             {"developer", f.developer}});
          w.text_element("description", f.description);
          write_refs(w, "classRefs", f.class_refs);
          write_refs(w, "methodRefs", f.method_refs);
          if (f.tasks.empty()) {
            w.empty("tasks");
          } else {
            w.open("tasks", {});
            for (const auto& t : f.tasks) w.text_element("task", t);
            w.close("tasks");
          }
          if (f.work_entries.empty()) {
            w.empty("workEntries");
          } else {
            w.open("workEntries", {});
            for (const auto& e : f.work_entries) {
              w.open("entry",
                     {{"qname", e.qname.str()},
                      {"date", format_date(e.date)},
                      {"hours", e.hours.to_string()},
                      {"type", std::string(to_string(e.type))}},
                     true);
            }
            w.close("workEntries");
          }
          w.close("feature");
        }
        w.close("sprint");
      }
      w.close("release");
    }
    w.close("releases");
  }
  w.close("scrum");
  return std::move(w.buffer());
}

std::vector<DanglingRef> validate_refs(const ScrumDataset& dataset, const CodeModel& model) {
  std::vector<DanglingRef> warnings;
  for (const auto& r : dataset.releases()) {
    for (const auto& s : r.sprints) {
      for (const auto& f : s.features) {
        std::set<QName> reported;
        auto check = [&](const QName& q) {
          if (!model.resolve(q) && reported.insert(q).second) warnings.push_back({f.id, q});
        };
        for (const auto& q : f.class_refs) check(q);
        for (const auto& q : f.method_refs) check(q);
        for (const auto& e : f.work_entries) check(e.qname);
      }
    }
  }
  return warnings;
}

}  // namespace tracecity
