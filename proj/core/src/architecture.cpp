#include "simval/architecture.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace simval {

const char* port_direction_name(PortDirection d) {
  return d == PortDirection::controlled ? "controlled" : "uncontrolled";
}

PortDirection port_direction_from_name(const std::string& name) {
  if (name == "controlled") return PortDirection::controlled;
  if (name == "uncontrolled") return PortDirection::uncontrolled;
  throw Error(errc::schema_error, "unknown port direction '" + name + "'");
}

PortPartition ComponentDecl::partition() const {
  PortPartition p;
  for (const auto& port : ports) {
    if (port.direction == PortDirection::controlled)
      p.controlled.insert(port.variable.name);
    else
      p.uncontrolled.insert(port.variable.name);
  }
  return p;
}

std::set<std::string> ComponentDecl::port_names() const {
  std::set<std::string> out;
  for (const auto& port : ports) out.insert(port.variable.name);
  return out;
}

Architecture::Architecture(std::vector<ComponentDecl> components,
                           std::vector<SimulationModelDecl> models)
    : components_(std::move(components)), models_(std::move(models)) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(components_.begin(), components_.end(), by_id);
  std::sort(models_.begin(), models_.end(), by_id);
  for (std::size_t i = 1; i < components_.size(); ++i)
    if (components_[i].id == components_[i - 1].id)
      throw Error(errc::duplicate_id, "duplicate component '" + components_[i].id + "'");
  for (std::size_t i = 1; i < models_.size(); ++i)
    if (models_[i].id == models_[i - 1].id)
      throw Error(errc::duplicate_id, "duplicate model '" + models_[i].id + "'");
  for (const auto& component : components_) {
    std::set<std::string> seen;
    for (const auto& port : component.ports) {
      port.variable.validate();
      if (!seen.insert(port.variable.name).second)
        throw Error(errc::duplicate_id, "component '" + component.id +
                                            "' declares variable '" + port.variable.name +
                                            "' on more than one port");
    }
  }
  for (const auto& model : models_) {
    const ComponentDecl* component = find_component(model.component_id);
    if (!component)
      throw Error(errc::dangling_reference, "model '" + model.id +
                                                "' references unknown component '" +
                                                model.component_id + "'");
    if (!(model.cost >= 0.0) || !std::isfinite(model.cost))
      throw Error(errc::structural_error,
                  "model '" + model.id + "' has a negative or non-finite cost");
    for (const auto& port : component->ports)
      if (!model.contract.alphabet().contains(port.variable.name))
        throw Error(errc::structural_error,
                    "contract '" + model.contract.id() + "' of model '" + model.id +
                        "' does not cover port variable '" + port.variable.name + "'");
  }
}

const ComponentDecl* Architecture::find_component(const std::string& id) const {
  auto it = std::lower_bound(components_.begin(), components_.end(), id,
                             [](const ComponentDecl& c, const std::string& v) { return c.id < v; });
  if (it == components_.end() || it->id != id) return nullptr;
  return &*it;
}

const SimulationModelDecl* Architecture::find_model(const std::string& id) const {
  auto it = std::lower_bound(
      models_.begin(), models_.end(), id,
      [](const SimulationModelDecl& m, const std::string& v) { return m.id < v; });
  if (it == models_.end() || it->id != id) return nullptr;
  return &*it;
}

std::vector<const SimulationModelDecl*> Architecture::models_of(
    const std::string& component_id) const {
  std::vector<const SimulationModelDecl*> out;
  for (const auto& model : models_)
    if (model.component_id == component_id) out.push_back(&model);
  return out;
}

Alphabet Architecture::port_alphabet() const {
  Alphabet sigma;
  for (const auto& component : components_) {
    std::vector<VariableDecl> vars;
    for (const auto& port : component.ports) vars.push_back(port.variable);
    sigma = merge_alphabets(sigma, Alphabet(std::move(vars)));
  }
  return sigma;
}

std::set<std::string> Architecture::external_input_names() const {
  std::set<std::string> all;
  std::set<std::string> controlled;
  for (const auto& component : components_) {
    for (const auto& port : component.ports) {
      all.insert(port.variable.name);
      if (port.direction == PortDirection::controlled) controlled.insert(port.variable.name);
    }
  }
  std::set<std::string> out;
  std::set_difference(all.begin(), all.end(), controlled.begin(), controlled.end(),
                      std::inserter(out, out.end()));
  return out;
}

namespace {

struct DeclSource {
  std::string where;  // "component X" or "contract of model Y"
  VariableDecl decl;
};

ComposabilityResult run_composability(const Architecture& arch, const SetupAssignment& setup,
                                      bool require_total) {
  // Validate the assignment shape first; malformed input is an error, not a
  // diagnostic.
  for (const auto& [component_id, model_id] : setup.model_for_component) {
    const ComponentDecl* component = arch.find_component(component_id);
    if (!component)
      throw Error(errc::structural_error, "setup names unknown component '" + component_id + "'");
    const SimulationModelDecl* model = arch.find_model(model_id);
    if (!model)
      throw Error(errc::structural_error, "setup names unknown model '" + model_id + "'");
    if (model->component_id != component_id)
      throw Error(errc::structural_error, "model '" + model_id + "' does not implement component '" +
                                              component_id + "'");
  }
  if (require_total) {
    for (const auto& component : arch.components())
      if (!setup.model_for_component.count(component.id))
        throw Error(errc::structural_error,
                    "setup assigns no model to component '" + component.id + "'");
  }

  std::vector<Diagnostic> diagnostics;

  // (a) Shared variable names must carry identical declarations, across all
  // ports and across the chosen contracts.
  std::map<std::string, std::vector<DeclSource>> decls;
  for (const auto& component : arch.components())
    for (const auto& port : component.ports)
      decls[port.variable.name].push_back({"component '" + component.id + "'", port.variable});
  for (const auto& [component_id, model_id] : setup.model_for_component) {
    const SimulationModelDecl* model = arch.find_model(model_id);
    for (const auto& decl : model->contract.alphabet().vars())
      decls[decl.name].push_back({"contract of model '" + model_id + "'", decl});
  }
  for (const auto& [name, sources] : decls) {
    const DeclSource* base = &sources.front();
    for (const auto& source : sources) {
      if (!(source.decl == base->decl)) {
        diagnostics.push_back({Diagnostic::Code::variable_conflict, name,
                               "variable '" + name + "' is declared differently by " +
                                   base->where + " and " + source.where});
        break;
      }
    }
  }

  // (b) At most one source per variable.
  std::map<std::string, std::vector<std::string>> controllers;
  for (const auto& component : arch.components())
    for (const auto& port : component.ports)
      if (port.direction == PortDirection::controlled)
        controllers[port.variable.name].push_back(component.id);
  for (const auto& [name, owners] : controllers) {
    if (owners.size() > 1) {
      std::string joined;
      for (const auto& owner : owners) {
        if (!joined.empty()) joined += ", ";
        joined += owner;
      }
      diagnostics.push_back({Diagnostic::Code::multiple_controllers, name,
                             "variable '" + name + "' has " + std::to_string(owners.size()) +
                                 " sources: " + joined});
    }
  }

  // (c) Each chosen contract must be compatible and consistent for its
  // component's port partition.
  for (const auto& [component_id, model_id] : setup.model_for_component) {
    const ComponentDecl* component = arch.find_component(component_id);
    const SimulationModelDecl* model = arch.find_model(model_id);
    const Contract& contract = model->contract;
    bool covered = true;
    for (const auto& port : component->ports) {
      if (!contract.alphabet().contains(port.variable.name)) {
        diagnostics.push_back({Diagnostic::Code::contract_alphabet_gap, model_id,
                               "contract '" + contract.id() + "' of model '" + model_id +
                                   "' does not cover port variable '" + port.variable.name +
                                   "'"});
        covered = false;
      }
    }
    if (!covered) continue;
    PortPartition partition = component->partition();
    if (!is_compatible(contract, partition))
      diagnostics.push_back({Diagnostic::Code::incompatible_contract, model_id,
                             "contract '" + contract.id() + "' of model '" + model_id +
                                 "' constrains controlled ports in its assumption"});
    if (!is_consistent(contract, partition))
      diagnostics.push_back({Diagnostic::Code::inconsistent_contract, model_id,
                             "contract '" + contract.id() + "' of model '" + model_id +
                                 "' constrains uncontrolled ports in its guarantee"});
  }

  std::sort(diagnostics.begin(), diagnostics.end(),
            [](const Diagnostic& a, const Diagnostic& b) {
              return std::tie(a.code, a.subject, a.message) <
                     std::tie(b.code, b.subject, b.message);
            });

  ComposabilityResult result;
  result.diagnostics = std::move(diagnostics);
  if (!result.ok()) return result;

  CompositionPlan plan;
  plan.alphabet = arch.port_alphabet();
  for (const auto& [component_id, model_id] : setup.model_for_component) {
    const SimulationModelDecl* model = arch.find_model(model_id);
    plan.alphabet = merge_alphabets(plan.alphabet, model->contract.alphabet());
  }
  for (const auto& component : arch.components())
    for (const auto& port : component.ports)
      if (port.direction == PortDirection::controlled)
        plan.controller.emplace(port.variable.name, component.id);
  for (const auto& component : arch.components())
    for (const auto& port : component.ports)
      if (!plan.controller.count(port.variable.name))
        plan.external_inputs.insert(port.variable.name);
  result.plan = std::move(plan);
  return result;
}

}  // namespace

ComposabilityResult check_composability(const Architecture& arch, const SetupAssignment& setup) {
  return run_composability(arch, setup, /*require_total=*/true);
}

ComposabilityResult check_composability_partial(const Architecture& arch,
                                                const SetupAssignment& partial) {
  return run_composability(arch, partial, /*require_total=*/false);
}

std::set<std::string> external_inputs(const CompositionPlan& plan) {
  return plan.external_inputs;
}

const char* diagnostic_code_name(Diagnostic::Code code) {
  switch (code) {
    case Diagnostic::Code::variable_conflict: return "variable-conflict";
    case Diagnostic::Code::multiple_controllers: return "multiple-controllers";
    case Diagnostic::Code::incompatible_contract: return "incompatible-contract";
    case Diagnostic::Code::inconsistent_contract: return "inconsistent-contract";
    case Diagnostic::Code::contract_alphabet_gap: return "contract-alphabet-gap";
  }
  return "?";
}

}  // namespace simval
