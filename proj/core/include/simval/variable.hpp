#ifndef SIMVAL_VARIABLE_HPP
#define SIMVAL_VARIABLE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "simval/errors.hpp"

namespace simval {

enum class VarKind { real, integer, boolean, enumeration };

const char* var_kind_name(VarKind kind);
VarKind var_kind_from_name(const std::string& name);  // throws SchemaError

// A declared variable. The declaration bounds the universe for that variable:
// real/integer kinds range over the closed interval [lo, hi], enumerations
// over a finite label set, booleans over {false, true}. Units are matched by
// exact string comparison; no conversion is ever attempted.
struct VariableDecl {
  std::string name;
  VarKind kind = VarKind::real;
  std::string unit;                 // empty means dimensionless
  double lo = 0.0;                  // numeric kinds only
  double hi = 0.0;
  std::vector<std::string> labels;  // enumeration/boolean; sorted, unique

  static VariableDecl real_var(std::string name, std::string unit, double lo, double hi);
  static VariableDecl integer_var(std::string name, std::string unit, double lo, double hi);
  static VariableDecl boolean_var(std::string name);
  static VariableDecl enum_var(std::string name, std::vector<std::string> labels);

  bool numeric() const { return kind == VarKind::real || kind == VarKind::integer; }

  // Checks the declaration invariants; throws on violation.
  void validate() const;

  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

// An ordered set of variable declarations. Order is canonical (lexicographic
// by name) so that serialized forms and iteration are deterministic.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<VariableDecl> vars);  // sorts + validates

  std::size_t size() const { return vars_.size(); }
  bool is_empty() const { return vars_.empty(); }
  const std::vector<VariableDecl>& vars() const { return vars_; }

  const VariableDecl* find(const std::string& name) const;
  const VariableDecl& at(const std::string& name) const;     // UnknownVariable
  std::size_t index_of(const std::string& name) const;       // UnknownVariable
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  std::set<std::string> names() const;
  Alphabet restricted_to(const std::set<std::string>& keep) const;  // UnknownVariable

  // True when every declaration of `other` appears here verbatim.
  bool is_superset_of(const Alphabet& other) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<VariableDecl> vars_;  // sorted by name
};

// Union of two alphabets. Shared names must carry identical declarations
// (kind, unit, domain); otherwise VariableDeclConflict.
Alphabet merge_alphabets(const Alphabet& a, const Alphabet& b);

// Runtime value of a single variable: a number for real/integer kinds, a
// label for enumeration/boolean kinds ("true"/"false" for booleans).
using Value = std::variant<double, std::string>;

// One time-slice of a run: variable name -> value.
using Valuation = std::map<std::string, Value>;

bool value_matches_kind(const VariableDecl& decl, const Value& value);
bool value_in_domain(const VariableDecl& decl, const Value& value);

std::string value_to_text(const VariableDecl& decl, const Value& value);

// Parses a bare CSV/DSL token into a value of the declared kind. Returns
// nullopt when the token cannot denote a value of that kind at all (a
// non-numeric token for a real variable, a fractional number for an integer
// variable, anything but true/false for a boolean). Out-of-domain values are
// returned as-is; domain checking is the caller's concern.
std::optional<Value> try_value_from_text(const VariableDecl& decl, const std::string& text);

// Shortest decimal text that parses back to exactly this double.
std::string format_number(double value);

}  // namespace simval

#endif  // SIMVAL_VARIABLE_HPP
