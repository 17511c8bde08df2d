#ifndef SIMVAL_CONFIGURATOR_HPP
#define SIMVAL_CONFIGURATOR_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "simval/architecture.hpp"

namespace simval {

// A test case: a concrete scenario (parameter bindings plus an optional
// operating-condition expression) and a validity requirement over the
// evaluation variables. Expression fields hold assertion DSL text; they are
// elaborated against the architecture's port alphabet when the test case
// contract is built.
struct TestCaseSpec {
  std::string id;
  std::map<std::string, Value> scenario_bindings;
  std::optional<std::string> operating_condition;
  std::string validity_requirement = "true";
  std::set<std::string> evaluation_variables;
};

// One enumerated simulation setup and its verdict.
struct SetupCandidate {
  SetupAssignment assignment;
  std::vector<std::string> model_ids;  // sorted; the deterministic tie-break key
  std::optional<Contract> composed_contract;  // absent when not composable
  double total_cost = 0.0;
  bool valid = false;
  std::string rejection;  // "", "composability", "refinement"
  std::vector<Diagnostic> diagnostics;       // composability findings
  std::string refinement_failed_side;        // "assumption" / "guarantee"
  std::optional<Valuation> witness;          // refinement-failure witness
};

// Every enumerable assignment appears exactly once, either under `valid`
// (ascending total cost, ties broken by the sorted model-id tuple) or under
// `rejected` (ordered by model-id tuple).
struct ConfigurationReport {
  std::string test_case_id;
  bool strict_refinement = false;
  std::vector<SetupCandidate> valid;
  std::vector<SetupCandidate> rejected;
};

struct ConfigureOptions {
  bool strict_refinement = false;
  std::size_t candidate_limit = 10000;
};

// Elaborates the test case into a contract over the architecture's port
// alphabet: parameter bindings and the operating-condition expression meet in
// the assumption, the validity requirement becomes the guarantee.
Contract build_test_case_contract(const TestCaseSpec& tc, const Architecture& arch);

// Enumerates every total assignment of models to components, checks
// composability, composes the chosen contracts in ascending model-id order
// and keeps the setups whose composed contract refines the test case
// contract. Deterministic for identical inputs.
ConfigurationReport configure(const Architecture& arch, const TestCaseSpec& tc,
                              const ConfigureOptions& options = {});

// Requirement for the one unassigned component: the quotient of the test case
// contract by the composition of the partially assigned models. Any model
// contract whose saturated, alphabet-equalized form refines the result makes
// the completed setup sufficiently valid.
Contract derive_missing_requirement(const Architecture& arch, const TestCaseSpec& tc,
                                    const SetupAssignment& partial,
                                    const std::string& target_component);

std::string render_report_text(const ConfigurationReport& report);
std::string render_report_json(const ConfigurationReport& report);

}  // namespace simval

#endif  // SIMVAL_CONFIGURATOR_HPP
