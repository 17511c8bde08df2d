#ifndef SIMVAL_SRC_JSON_DETAIL_HPP
#define SIMVAL_SRC_JSON_DETAIL_HPP

// Internal helpers shared by the serialization units. Not installed; public
// headers stay free of the vendored JSON dependency.

#include <json.hpp>

#include "simval/architecture.hpp"
#include "simval/contract.hpp"
#include "simval/parser.hpp"

namespace simval::detail {

using Json = nlohmann::json;

inline Json contract_to_json(const Contract& c) {
  Json j;
  j["id"] = c.id();
  Json names = Json::array();
  for (const auto& decl : c.alphabet().vars()) names.push_back(decl.name);
  j["alphabet"] = std::move(names);
  j["assume"] = render_assertion(c.assumption());
  j["guarantee"] = render_assertion(c.guarantee());
  if (!c.meta().empty()) j["meta"] = c.meta();
  return j;
}

inline Json value_to_json(const VariableDecl& decl, const Value& value) {
  if (const double* d = std::get_if<double>(&value)) return *d;
  const std::string& label = std::get<std::string>(value);
  if (decl.kind == VarKind::boolean) return label == "true";
  return label;
}

inline Json valuation_to_json(const Alphabet& alphabet, const Valuation& v) {
  Json j = Json::object();
  for (const auto& [name, value] : v) {
    const VariableDecl* decl = alphabet.find(name);
    j[name] = decl ? value_to_json(*decl, value)
                   : (std::holds_alternative<double>(value) ? Json(std::get<double>(value))
                                                            : Json(std::get<std::string>(value)));
  }
  return j;
}

inline Json diagnostic_to_json(const Diagnostic& d) {
  Json j;
  j["code"] = diagnostic_code_name(d.code);
  j["subject"] = d.subject;
  j["message"] = d.message;
  return j;
}

}  // namespace simval::detail

#endif  // SIMVAL_SRC_JSON_DETAIL_HPP
