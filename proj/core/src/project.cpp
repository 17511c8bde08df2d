#include "simval/project.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"

namespace simval {

namespace {

using detail::Json;

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw Error(errc::schema_error, where + ": " + what);
}

const Json& expect_member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string expect_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = expect_member(obj, key, where);
  if (!v.is_string()) schema_fail(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double expect_number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = expect_member(obj, key, where);
  if (!v.is_number()) schema_fail(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

const Json& expect_array(const Json& obj, const char* key, const std::string& where) {
  const Json& v = expect_member(obj, key, where);
  if (!v.is_array()) schema_fail(where, std::string("field '") + key + "' must be an array");
  return v;
}

VariableDecl parse_variable(const Json& j, const std::string& where) {
  VariableDecl d;
  d.name = expect_string(j, "name", where);
  d.kind = var_kind_from_name(expect_string(j, "kind", where));
  if (j.contains("unit")) {
    if (!j["unit"].is_string()) schema_fail(where, "field 'unit' must be a string");
    d.unit = j["unit"].get<std::string>();
  }
  switch (d.kind) {
    case VarKind::real:
    case VarKind::integer: {
      const Json& dom = expect_array(j, "domain", where);
      if (dom.size() != 2 || !dom[0].is_number() || !dom[1].is_number())
        schema_fail(where, "field 'domain' must be [lo, hi]");
      d.lo = dom[0].get<double>();
      d.hi = dom[1].get<double>();
      break;
    }
    case VarKind::boolean:
      d.labels = {"false", "true"};
      break;
    case VarKind::enumeration: {
      const Json& labels = expect_array(j, "labels", where);
      for (const auto& l : labels) {
        if (!l.is_string()) schema_fail(where, "labels must be strings");
        d.labels.push_back(l.get<std::string>());
      }
      std::sort(d.labels.begin(), d.labels.end());
      break;
    }
  }
  d.validate();
  return d;
}

Json variable_to_json(const VariableDecl& d) {
  Json j;
  j["name"] = d.name;
  j["kind"] = var_kind_name(d.kind);
  if (!d.unit.empty()) j["unit"] = d.unit;
  if (d.numeric()) j["domain"] = {d.lo, d.hi};
  if (d.kind == VarKind::enumeration) j["labels"] = d.labels;
  return j;
}

AssertionSet parse_expr_field(const Json& obj, const char* key, const Alphabet& alphabet,
                              const std::string& where, bool required) {
  if (!obj.contains(key)) {
    if (required) schema_fail(where, std::string("missing field '") + key + "'");
    return AssertionSet::universe(alphabet);
  }
  if (!obj[key].is_string()) schema_fail(where, std::string("field '") + key + "' must be a string");
  try {
    return parse_assertion(obj[key].get<std::string>(), alphabet);
  } catch (const ParseError& e) {
    throw ParseError(e.code(), where + ", field '" + key + "': " + e.what(), e.line(),
                     e.column(), e.expected());
  }
}

Value parse_binding_value(const VariableDecl& decl, const Json& j, const std::string& where) {
  switch (decl.kind) {
    case VarKind::real:
    case VarKind::integer:
      if (!j.is_number())
        schema_fail(where, "binding for numeric variable '" + decl.name + "' must be a number");
      return Value(j.get<double>());
    case VarKind::boolean:
      if (j.is_boolean()) return Value(std::string(j.get<bool>() ? "true" : "false"));
      if (j.is_string()) return Value(j.get<std::string>());
      schema_fail(where, "binding for boolean variable '" + decl.name + "' must be a boolean");
    case VarKind::enumeration:
      if (!j.is_string())
        schema_fail(where, "binding for enumeration variable '" + decl.name + "' must be a string");
      return Value(j.get<std::string>());
  }
  schema_fail(where, "unreachable");
}

}  // namespace

const Contract* Project::find_contract(const std::string& id) const {
  for (const auto& c : contracts)
    if (c.id() == id) return &c;
  return nullptr;
}

const TestCaseSpec* Project::find_test_case(const std::string& id) const {
  for (const auto& tc : test_cases)
    if (tc.id == id) return &tc;
  return nullptr;
}

Project load_project(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(errc::schema_error, std::string("project file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(errc::schema_error, "project document must be an object");
  std::string version = expect_string(doc, "format_version", "project");
  if (version != "1")
    throw Error(errc::schema_error, "unsupported format_version '" + version + "' (expected \"1\")");

  Project project;

  // variables
  {
    std::vector<VariableDecl> vars;
    const Json& section = expect_array(doc, "variables", "project");
    for (std::size_t i = 0; i < section.size(); ++i)
      vars.push_back(parse_variable(section[i], "variables[" + std::to_string(i) + "]"));
    project.variables = Alphabet(std::move(vars));  // DuplicateId on clashes
  }

  // contracts
  if (doc.contains("contracts")) {
    const Json& section = expect_array(doc, "contracts", "project");
    for (std::size_t i = 0; i < section.size(); ++i) {
      const Json& j = section[i];
      std::string where = "contracts[" + std::to_string(i) + "]";
      std::string id = expect_string(j, "id", where);
      where += " ('" + id + "')";
      if (project.find_contract(id))
        throw Error(errc::duplicate_id, "duplicate contract id '" + id + "'");
      std::vector<VariableDecl> vars;
      for (const auto& name : expect_array(j, "alphabet", where)) {
        if (!name.is_string()) schema_fail(where, "alphabet entries must be variable names");
        const VariableDecl* decl = project.variables.find(name.get<std::string>());
        if (!decl)
          throw Error(errc::dangling_reference,
                      where + " references undeclared variable '" + name.get<std::string>() + "'");
        vars.push_back(*decl);
      }
      Alphabet alphabet(std::move(vars));
      AssertionSet assume = parse_expr_field(j, "assume", alphabet, where, /*required=*/false);
      AssertionSet guarantee =
          parse_expr_field(j, "guarantee", alphabet, where, /*required=*/false);
      project.contracts.emplace_back(id, std::move(assume), std::move(guarantee));
    }
    std::sort(project.contracts.begin(), project.contracts.end(),
              [](const Contract& a, const Contract& b) { return a.id() < b.id(); });
  }

  // components + models
  std::vector<ComponentDecl> components;
  if (doc.contains("components")) {
    const Json& section = expect_array(doc, "components", "project");
    for (std::size_t i = 0; i < section.size(); ++i) {
      const Json& j = section[i];
      std::string where = "components[" + std::to_string(i) + "]";
      ComponentDecl component;
      component.id = expect_string(j, "id", where);
      where += " ('" + component.id + "')";
      for (const auto& pj : expect_array(j, "ports", where)) {
        PortDecl port;
        const Json& variable = expect_member(pj, "variable", where);
        if (variable.is_string()) {
          const VariableDecl* decl = project.variables.find(variable.get<std::string>());
          if (!decl)
            throw Error(errc::dangling_reference,
                        where + " references undeclared variable '" +
                            variable.get<std::string>() + "'");
          port.variable = *decl;
        } else {
          port.variable = parse_variable(variable, where + " inline variable");
        }
        port.direction = port_direction_from_name(expect_string(pj, "direction", where));
        component.ports.push_back(std::move(port));
      }
      components.push_back(std::move(component));
    }
  }

  std::vector<SimulationModelDecl> models;
  if (doc.contains("models")) {
    const Json& section = expect_array(doc, "models", "project");
    for (std::size_t i = 0; i < section.size(); ++i) {
      const Json& j = section[i];
      std::string where = "models[" + std::to_string(i) + "]";
      std::string id = expect_string(j, "id", where);
      where += " ('" + id + "')";
      std::string component_id = expect_string(j, "component", where);
      std::string contract_id = expect_string(j, "contract", where);
      const Contract* contract = project.find_contract(contract_id);
      if (!contract)
        throw Error(errc::dangling_reference,
                    where + " references undeclared contract '" + contract_id + "'");
      double cost = expect_number(j, "cost", where);
      if (!(cost >= 0.0) || !std::isfinite(cost))
        schema_fail(where, "cost must be a non-negative finite number");
      std::map<std::string, std::string> metadata;
      if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) schema_fail(where, "metadata must be an object");
        for (const auto& [k, v] : j["metadata"].items()) {
          if (!v.is_string()) schema_fail(where, "metadata values must be strings");
          metadata.emplace(k, v.get<std::string>());
        }
      }
      models.push_back({id, component_id, *contract, cost, std::move(metadata)});
    }
  }

  // The Architecture constructor checks referential integrity, cost bounds,
  // duplicate ids and contract/port coverage.
  project.architecture = Architecture(std::move(components), std::move(models));

  // test cases
  if (doc.contains("test_cases")) {
    const Json& section = expect_array(doc, "test_cases", "project");
    for (std::size_t i = 0; i < section.size(); ++i) {
      const Json& j = section[i];
      std::string where = "test_cases[" + std::to_string(i) + "]";
      TestCaseSpec tc;
      tc.id = expect_string(j, "id", where);
      where += " ('" + tc.id + "')";
      if (project.find_test_case(tc.id))
        throw Error(errc::duplicate_id, "duplicate test case id '" + tc.id + "'");
      if (j.contains("bindings")) {
        if (!j["bindings"].is_object()) schema_fail(where, "bindings must be an object");
        for (const auto& [name, value] : j["bindings"].items()) {
          const VariableDecl* decl = project.variables.find(name);
          if (!decl)
            throw Error(errc::dangling_reference,
                        where + " binds undeclared variable '" + name + "'");
          tc.scenario_bindings.emplace(name, parse_binding_value(*decl, value, where));
        }
      }
      // Elaborate expressions against the global alphabet now, both to fail
      // early and to store canonical text.
      if (j.contains("operating_condition")) {
        AssertionSet oc =
            parse_expr_field(j, "operating_condition", project.variables, where, true);
        tc.operating_condition = render_assertion(oc);
      }
      AssertionSet req =
          parse_expr_field(j, "validity_requirement", project.variables, where, true);
      tc.validity_requirement = render_assertion(req);
      if (j.contains("evaluation_variables")) {
        for (const auto& name : expect_array(j, "evaluation_variables", where)) {
          if (!name.is_string()) schema_fail(where, "evaluation_variables must be names");
          if (!project.variables.contains(name.get<std::string>()))
            throw Error(errc::dangling_reference,
                        where + " evaluates undeclared variable '" + name.get<std::string>() +
                            "'");
          tc.evaluation_variables.insert(name.get<std::string>());
        }
      }
      project.test_cases.push_back(std::move(tc));
    }
    std::sort(project.test_cases.begin(), project.test_cases.end(),
              [](const TestCaseSpec& a, const TestCaseSpec& b) { return a.id < b.id; });
  }

  return project;
}

Project load_project_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::structural_error, "cannot open project file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_project(buf.str());
}

std::string save_project(const Project& project) {
  Json doc;
  doc["format_version"] = "1";

  Json variables = Json::array();
  for (const auto& decl : project.variables.vars()) variables.push_back(variable_to_json(decl));
  doc["variables"] = std::move(variables);

  std::vector<const Contract*> sorted_contracts;
  for (const auto& c : project.contracts) sorted_contracts.push_back(&c);
  std::sort(sorted_contracts.begin(), sorted_contracts.end(),
            [](const Contract* a, const Contract* b) { return a->id() < b->id(); });
  Json contracts = Json::array();
  for (const Contract* c : sorted_contracts) {
    Json j;
    j["id"] = c->id();
    Json names = Json::array();
    for (const auto& decl : c->alphabet().vars()) names.push_back(decl.name);
    j["alphabet"] = std::move(names);
    j["assume"] = render_assertion(c->assumption());
    j["guarantee"] = render_assertion(c->guarantee());
    contracts.push_back(std::move(j));
  }
  doc["contracts"] = std::move(contracts);

  Json components = Json::array();
  for (const auto& component : project.architecture.components()) {
    Json j;
    j["id"] = component.id;
    Json ports = Json::array();
    std::vector<PortDecl> sorted = component.ports;
    std::sort(sorted.begin(), sorted.end(), [](const PortDecl& a, const PortDecl& b) {
      return a.variable.name < b.variable.name;
    });
    for (const auto& port : sorted) {
      Json pj;
      const VariableDecl* global = project.variables.find(port.variable.name);
      if (global && *global == port.variable)
        pj["variable"] = port.variable.name;
      else
        pj["variable"] = variable_to_json(port.variable);
      pj["direction"] = port_direction_name(port.direction);
      ports.push_back(std::move(pj));
    }
    j["ports"] = std::move(ports);
    components.push_back(std::move(j));
  }
  doc["components"] = std::move(components);

  Json models = Json::array();
  for (const auto& model : project.architecture.models()) {
    if (!project.find_contract(model.contract.id()))
      throw Error(errc::dangling_reference, "model '" + model.id + "' carries contract '" +
                                                model.contract.id() +
                                                "' which is not in the contract table");
    Json j;
    j["id"] = model.id;
    j["component"] = model.component_id;
    j["contract"] = model.contract.id();
    j["cost"] = model.cost;
    if (!model.metadata.empty()) j["metadata"] = model.metadata;
    models.push_back(std::move(j));
  }
  doc["models"] = std::move(models);

  std::vector<const TestCaseSpec*> sorted_cases;
  for (const auto& tc : project.test_cases) sorted_cases.push_back(&tc);
  std::sort(sorted_cases.begin(), sorted_cases.end(),
            [](const TestCaseSpec* a, const TestCaseSpec* b) { return a->id < b->id; });
  Json test_cases = Json::array();
  for (const TestCaseSpec* tcp : sorted_cases) {
    const TestCaseSpec& tc = *tcp;
    Json j;
    j["id"] = tc.id;
    Json bindings = Json::object();
    for (const auto& [name, value] : tc.scenario_bindings)
      bindings[name] = detail::value_to_json(project.variables.at(name), value);
    j["bindings"] = std::move(bindings);
    if (tc.operating_condition) j["operating_condition"] = *tc.operating_condition;
    j["validity_requirement"] = tc.validity_requirement;
    j["evaluation_variables"] = tc.evaluation_variables;
    test_cases.push_back(std::move(j));
  }
  doc["test_cases"] = std::move(test_cases);

  return doc.dump(2) + "\n";
}

}  // namespace simval
