#ifndef SIMVAL_ARCHITECTURE_HPP
#define SIMVAL_ARCHITECTURE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "simval/contract.hpp"

namespace simval {

enum class PortDirection { controlled, uncontrolled };

const char* port_direction_name(PortDirection d);
PortDirection port_direction_from_name(const std::string& name);  // SchemaError

// A port carries the full variable declaration; kind, unit and domain are the
// "syntax" that composability matches across components.
struct PortDecl {
  VariableDecl variable;
  PortDirection direction = PortDirection::uncontrolled;
};

struct ComponentDecl {
  std::string id;
  std::vector<PortDecl> ports;

  PortPartition partition() const;
  std::set<std::string> port_names() const;
};

// A candidate implementation of one component. The contract represents the
// model's validity domain: operating conditions in the assumption, validity
// metrics bounded in the guarantee. Cost is a single non-negative scalar in
// abstract compute units.
struct SimulationModelDecl {
  std::string id;
  std::string component_id;
  Contract contract;
  double cost = 0.0;
  std::map<std::string, std::string> metadata;
};

// Components, their candidate models, and shared-variable wiring: two ports
// referring to the same variable name are connected. There are no explicit
// connector objects and no renaming.
class Architecture {
public:
  Architecture() = default;
  Architecture(std::vector<ComponentDecl> components, std::vector<SimulationModelDecl> models);

  const std::vector<ComponentDecl>& components() const { return components_; }
  const std::vector<SimulationModelDecl>& models() const { return models_; }

  const ComponentDecl* find_component(const std::string& id) const;
  const SimulationModelDecl* find_model(const std::string& id) const;
  std::vector<const SimulationModelDecl*> models_of(const std::string& component_id) const;

  // Union of all port variable declarations. VariableDeclConflict when two
  // components declare the same name differently.
  Alphabet port_alphabet() const;

  // Variables no component controls; they must be parametrized externally
  // (scenario parameters).
  std::set<std::string> external_input_names() const;

private:
  std::vector<ComponentDecl> components_;  // sorted by id
  std::vector<SimulationModelDecl> models_;  // sorted by id
};

// A total choice of one simulation model per component.
struct SetupAssignment {
  std::map<std::string, std::string> model_for_component;
};

// One composability finding. Diagnostics are results, not errors; a check
// reports every violation, not just the first.
struct Diagnostic {
  enum class Code {
    variable_conflict,      // same name, different kind/unit/domain
    multiple_controllers,   // more than one source for a variable
    incompatible_contract,  // assumption constrains controlled ports
    inconsistent_contract,  // guarantee constrains uncontrolled ports
    contract_alphabet_gap,  // contract does not cover the component's ports
  };
  Code code;
  std::string subject;  // variable name or model id
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

const char* diagnostic_code_name(Diagnostic::Code code);

struct CompositionPlan {
  Alphabet alphabet;                              // union over ports and contracts
  std::map<std::string, std::string> controller;  // variable -> component id
  std::set<std::string> external_inputs;          // uncontrolled by every model
};

struct ComposabilityResult {
  std::optional<CompositionPlan> plan;  // engaged iff diagnostics empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// Syntactic composability of a chosen setup: (a) shared variable names carry
// identical declarations, (b) each variable has at most one source, (c) every
// chosen contract is compatible and consistent for its component's ports.
// Deterministic and independent of declaration order. StructuralError on
// malformed input (setup not total, dangling ids).
ComposabilityResult check_composability(const Architecture& arch, const SetupAssignment& setup);

// Same checks restricted to a partial assignment; components without an
// assigned model contribute only their ports.
ComposabilityResult check_composability_partial(const Architecture& arch,
                                                const SetupAssignment& partial);

std::set<std::string> external_inputs(const CompositionPlan& plan);

}  // namespace simval

#endif  // SIMVAL_ARCHITECTURE_HPP
