#include "simval/variable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace simval {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

const char* var_kind_name(VarKind kind) {
  switch (kind) {
    case VarKind::real: return "real";
    case VarKind::integer: return "integer";
    case VarKind::boolean: return "boolean";
    case VarKind::enumeration: return "enumeration";
  }
  return "?";
}

VarKind var_kind_from_name(const std::string& name) {
  if (name == "real") return VarKind::real;
  if (name == "integer") return VarKind::integer;
  if (name == "boolean") return VarKind::boolean;
  if (name == "enumeration") return VarKind::enumeration;
  throw Error(errc::schema_error, "unknown variable kind '" + name + "'");
}

VariableDecl VariableDecl::real_var(std::string name, std::string unit, double lo, double hi) {
  VariableDecl d;
  d.name = std::move(name);
  d.kind = VarKind::real;
  d.unit = std::move(unit);
  d.lo = lo;
  d.hi = hi;
  d.validate();
  return d;
}

VariableDecl VariableDecl::integer_var(std::string name, std::string unit, double lo, double hi) {
  VariableDecl d;
  d.name = std::move(name);
  d.kind = VarKind::integer;
  d.unit = std::move(unit);
  d.lo = lo;
  d.hi = hi;
  d.validate();
  return d;
}

VariableDecl VariableDecl::boolean_var(std::string name) {
  VariableDecl d;
  d.name = std::move(name);
  d.kind = VarKind::boolean;
  d.labels = {"false", "true"};
  d.validate();
  return d;
}

VariableDecl VariableDecl::enum_var(std::string name, std::vector<std::string> labels) {
  VariableDecl d;
  d.name = std::move(name);
  d.kind = VarKind::enumeration;
  std::sort(labels.begin(), labels.end());
  d.labels = std::move(labels);
  d.validate();
  return d;
}

void VariableDecl::validate() const {
  if (!is_identifier(name))
    throw Error(errc::schema_error, "variable name '" + name + "' is not an identifier");
  switch (kind) {
    case VarKind::real:
    case VarKind::integer:
      if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw Error(errc::schema_error, "variable '" + name + "' has a non-finite domain bound");
      if (lo > hi)
        throw Error(errc::schema_error,
                    "variable '" + name + "' has domain lower bound above upper bound");
      if (kind == VarKind::integer && !(is_integral(lo) && is_integral(hi)))
        throw Error(errc::schema_error,
                    "integer variable '" + name + "' has non-integral domain bounds");
      if (!labels.empty())
        throw Error(errc::schema_error, "numeric variable '" + name + "' declares labels");
      break;
    case VarKind::boolean:
      if (labels != std::vector<std::string>{"false", "true"})
        throw Error(errc::schema_error, "boolean variable '" + name + "' must range over {false, true}");
      break;
    case VarKind::enumeration: {
      if (labels.empty())
        throw Error(errc::schema_error, "enumeration variable '" + name + "' has no labels");
      if (!std::is_sorted(labels.begin(), labels.end()))
        throw Error(errc::schema_error, "labels of '" + name + "' are not in canonical order");
      if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw Error(errc::schema_error, "labels of '" + name + "' are not unique");
      for (const auto& l : labels)
        if (!is_identifier(l))
          throw Error(errc::schema_error,
                      "label '" + l + "' of variable '" + name + "' is not an identifier");
      break;
    }
  }
}

Alphabet::Alphabet(std::vector<VariableDecl> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end(),
            [](const VariableDecl& a, const VariableDecl& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    vars_[i].validate();
    if (i > 0 && vars_[i].name == vars_[i - 1].name)
      throw Error(errc::duplicate_id, "duplicate variable '" + vars_[i].name + "' in alphabet");
  }
}

const VariableDecl* Alphabet::find(const std::string& name) const {
  auto it = std::lower_bound(
      vars_.begin(), vars_.end(), name,
      [](const VariableDecl& d, const std::string& n) { return d.name < n; });
  if (it == vars_.end() || it->name != name) return nullptr;
  return &*it;
}

const VariableDecl& Alphabet::at(const std::string& name) const {
  if (const VariableDecl* d = find(name)) return *d;
  throw Error(errc::unknown_variable, "variable '" + name + "' is not in the alphabet");
}

std::size_t Alphabet::index_of(const std::string& name) const {
  const VariableDecl& d = at(name);
  return static_cast<std::size_t>(&d - vars_.data());
}

std::set<std::string> Alphabet::names() const {
  std::set<std::string> out;
  for (const auto& v : vars_) out.insert(v.name);
  return out;
}

Alphabet Alphabet::restricted_to(const std::set<std::string>& keep) const {
  std::vector<VariableDecl> vars;
  for (const auto& n : keep) vars.push_back(at(n));
  return Alphabet(std::move(vars));
}

bool Alphabet::is_superset_of(const Alphabet& other) const {
  for (const auto& v : other.vars_) {
    const VariableDecl* mine = find(v.name);
    if (!mine || !(*mine == v)) return false;
  }
  return true;
}

Alphabet merge_alphabets(const Alphabet& a, const Alphabet& b) {
  std::vector<VariableDecl> vars = a.vars();
  for (const auto& v : b.vars()) {
    if (const VariableDecl* mine = a.find(v.name)) {
      if (!(*mine == v))
        throw Error(errc::variable_decl_conflict,
                    "variable '" + v.name + "' is declared differently (kind/unit/domain) "
                    "by the two alphabets");
    } else {
      vars.push_back(v);
    }
  }
  return Alphabet(std::move(vars));
}

bool value_matches_kind(const VariableDecl& decl, const Value& value) {
  if (decl.numeric()) {
    const double* d = std::get_if<double>(&value);
    if (!d || !std::isfinite(*d)) return false;
    return decl.kind == VarKind::real || is_integral(*d);
  }
  return std::holds_alternative<std::string>(value);
}

bool value_in_domain(const VariableDecl& decl, const Value& value) {
  if (!value_matches_kind(decl, value)) return false;
  if (decl.numeric()) {
    double d = std::get<double>(value);
    return decl.lo <= d && d <= decl.hi;
  }
  const std::string& label = std::get<std::string>(value);
  return std::binary_search(decl.labels.begin(), decl.labels.end(), label);
}

std::string value_to_text(const VariableDecl& decl, const Value& value) {
  if (const double* d = std::get_if<double>(&value)) {
    (void)decl;
    return format_number(*d);
  }
  return std::get<std::string>(value);
}

std::optional<Value> try_value_from_text(const VariableDecl& decl, const std::string& text) {
  switch (decl.kind) {
    case VarKind::real:
    case VarKind::integer: {
      double v = 0.0;
      const char* first = text.data();
      const char* last = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
      if (decl.kind == VarKind::integer && !is_integral(v)) return std::nullopt;
      return Value(v);
    }
    case VarKind::boolean:
      if (text == "true" || text == "false") return Value(text);
      return std::nullopt;
    case VarKind::enumeration:
      if (!is_identifier(text)) return std::nullopt;
      return Value(text);
  }
  return std::nullopt;
}

std::string format_number(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace simval
