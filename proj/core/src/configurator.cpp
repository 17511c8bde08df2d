#include "simval/configurator.hpp"

#include <algorithm>

#include "simval/parser.hpp"
#include "json_detail.hpp"

namespace simval {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string render_valuation(const Alphabet& alphabet, const Valuation& v) {
  std::vector<std::string> parts;
  for (const auto& [name, value] : v) {
    const VariableDecl* decl = alphabet.find(name);
    parts.push_back(name + "=" + (decl ? value_to_text(*decl, value) : std::string("?")));
  }
  return join(parts, ", ");
}

std::vector<Contract> chosen_contracts_by_model_id(const Architecture& arch,
                                                   const SetupAssignment& assignment) {
  std::vector<const SimulationModelDecl*> models;
  for (const auto& [component_id, model_id] : assignment.model_for_component)
    models.push_back(arch.find_model(model_id));
  std::sort(models.begin(), models.end(),
            [](const SimulationModelDecl* a, const SimulationModelDecl* b) {
              return a->id < b->id;
            });
  std::vector<Contract> contracts;
  contracts.reserve(models.size());
  for (const auto* m : models) contracts.push_back(m->contract);
  return contracts;
}

}  // namespace

Contract build_test_case_contract(const TestCaseSpec& tc, const Architecture& arch) {
  Alphabet sigma = arch.port_alphabet();
  std::set<std::string> externals = arch.external_input_names();

  AssertionSet assumption = AssertionSet::universe(sigma);
  for (const auto& [name, value] : tc.scenario_bindings) {
    const VariableDecl* decl = sigma.find(name);
    if (!decl)
      throw Error(errc::unknown_variable,
                  "scenario parameter '" + name + "' is not a port variable");
    if (!value_in_domain(*decl, value))
      throw Error(errc::domain_violation,
                  "scenario parameter '" + name + "' is bound outside its declared domain");
    if (!externals.count(name))
      throw Error(errc::structural_error, "scenario parameter '" + name +
                                              "' is controlled by a component and cannot be "
                                              "bound externally");
    AtomConstraint atom = decl->numeric()
                              ? AtomConstraint(Interval{std::get<double>(value),
                                                        std::get<double>(value), false, false})
                              : AtomConstraint(LabelSet{std::get<std::string>(value)});
    assumption = assumption.intersect(AssertionSet::single_atom(sigma, name, std::move(atom)));
  }
  if (tc.operating_condition)
    assumption = assumption.intersect(parse_assertion(*tc.operating_condition, sigma));

  AssertionSet guarantee = parse_assertion(tc.validity_requirement, sigma);

  for (const auto& name : tc.evaluation_variables) {
    sigma.at(name);  // UnknownVariable
    bool controlled = false;
    for (const auto& component : arch.components())
      for (const auto& port : component.ports)
        if (port.direction == PortDirection::controlled && port.variable.name == name)
          controlled = true;
    if (!controlled)
      throw Error(errc::evaluation_variable_uncontrolled,
                  "evaluation variable '" + name + "' is not controlled by any component");
  }

  return Contract(tc.id, std::move(assumption), std::move(guarantee));
}

ConfigurationReport configure(const Architecture& arch, const TestCaseSpec& tc,
                              const ConfigureOptions& options) {
  std::vector<const ComponentDecl*> components;
  std::vector<std::vector<const SimulationModelDecl*>> choices;
  std::size_t count = 1;
  for (const auto& component : arch.components()) {
    auto models = arch.models_of(component.id);
    if (models.empty())
      throw Error(errc::no_models_for_component,
                  "component '" + component.id + "' has no candidate simulation model");
    components.push_back(&component);
    choices.push_back(std::move(models));
    if (count <= options.candidate_limit) count *= choices.back().size();
  }
  if (count > options.candidate_limit)
    throw Error(errc::candidate_limit_exceeded,
                "enumeration would visit more than " + std::to_string(options.candidate_limit) +
                    " candidate setups (raise the limit to proceed)");

  // The test case contract needs a conflict-free port alphabet. When port
  // declarations conflict, every candidate fails composability rule (a);
  // the report then carries those findings instead of refinement verdicts.
  std::optional<Contract> test_contract;
  try {
    test_contract = build_test_case_contract(tc, arch);
  } catch (const Error& e) {
    if (e.code() != errc::variable_decl_conflict) throw;
  }

  ConfigurationReport report;
  report.test_case_id = tc.id;
  report.strict_refinement = options.strict_refinement;

  std::vector<std::size_t> odometer(choices.size(), 0);
  for (;;) {
    SetupCandidate candidate;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const SimulationModelDecl* model = choices[i][odometer[i]];
      candidate.assignment.model_for_component.emplace(components[i]->id, model->id);
      candidate.model_ids.push_back(model->id);
      candidate.total_cost += model->cost;
    }
    std::sort(candidate.model_ids.begin(), candidate.model_ids.end());

    ComposabilityResult cr = check_composability(arch, candidate.assignment);
    if (!cr.ok()) {
      candidate.rejection = "composability";
      candidate.diagnostics = cr.diagnostics;
    } else {
      if (!test_contract)
        throw Error(errc::structural_error,
                    "composable setup found although the port alphabet has conflicts");
      // Pairwise composition already saturates; the single-model case needs
      // the explicit step so every candidate contract is in canonical form.
      Contract composed = compose_all(chosen_contracts_by_model_id(arch, candidate.assignment));
      if (!is_saturated(composed)) composed = saturate(composed);
      auto [sub, super] = equalize_alphabets(composed, *test_contract);
      RefinementCheck rc = check_refinement(sub, super, options.strict_refinement);
      candidate.composed_contract = std::move(composed);
      candidate.valid = rc.holds;
      if (!rc.holds) {
        candidate.rejection = "refinement";
        candidate.refinement_failed_side = rc.failed_side;
        candidate.witness = rc.witness;
      }
    }

    if (candidate.valid)
      report.valid.push_back(std::move(candidate));
    else
      report.rejected.push_back(std::move(candidate));

    std::size_t i = 0;
    for (; i < odometer.size(); ++i) {
      if (++odometer[i] < choices[i].size()) break;
      odometer[i] = 0;
    }
    if (i == odometer.size()) break;
  }

  std::sort(report.valid.begin(), report.valid.end(),
            [](const SetupCandidate& a, const SetupCandidate& b) {
              return std::tie(a.total_cost, a.model_ids) < std::tie(b.total_cost, b.model_ids);
            });
  std::sort(report.rejected.begin(), report.rejected.end(),
            [](const SetupCandidate& a, const SetupCandidate& b) {
              return a.model_ids < b.model_ids;
            });
  return report;
}

Contract derive_missing_requirement(const Architecture& arch, const TestCaseSpec& tc,
                                    const SetupAssignment& partial,
                                    const std::string& target_component) {
  if (!arch.find_component(target_component))
    throw Error(errc::structural_error, "unknown target component '" + target_component + "'");
  if (partial.model_for_component.count(target_component))
    throw Error(errc::target_component_assigned,
                "target component '" + target_component + "' already has a model assigned");
  for (const auto& component : arch.components())
    if (component.id != target_component && !partial.model_for_component.count(component.id))
      throw Error(errc::structural_error,
                  "partial setup assigns no model to component '" + component.id + "'");

  ComposabilityResult cr = check_composability_partial(arch, partial);
  if (!cr.ok()) {
    std::vector<std::string> messages;
    for (const auto& d : cr.diagnostics) messages.push_back(d.message);
    throw Error(errc::structural_error,
                "partial setup is not composable: " + join(messages, "; "));
  }

  Contract top = saturate(build_test_case_contract(tc, arch));
  if (partial.model_for_component.empty())
    return quotient(top, true_contract("true", top.alphabet()));
  Contract part = compose_all(chosen_contracts_by_model_id(arch, partial));
  return quotient(top, part);
}

std::string render_report_text(const ConfigurationReport& report) {
  std::string out = "configuration report for test case '" + report.test_case_id + "'";
  if (report.strict_refinement) out += " (strict refinement)";
  out += "\n";
  if (report.valid.empty()) {
    out += "no sufficiently valid setup\n";
  } else {
    out += "valid setups (cheapest first):\n";
    std::size_t rank = 1;
    for (const auto& c : report.valid) {
      out += "  " + std::to_string(rank++) + ". " + join(c.model_ids, " + ") + "  cost " +
             format_number(c.total_cost) + "\n";
    }
  }
  if (!report.rejected.empty()) {
    out += "rejected setups:\n";
    for (const auto& c : report.rejected) {
      out += "  - " + join(c.model_ids, " + ") + ": ";
      if (c.rejection == "composability") {
        std::vector<std::string> messages;
        for (const auto& d : c.diagnostics) messages.push_back(d.message);
        out += "not composable (" + join(messages, "; ") + ")";
      } else {
        out += "refinement fails on the " + c.refinement_failed_side;
        if (c.witness && c.composed_contract)
          out += "; witness: " + render_valuation(c.composed_contract->alphabet(), *c.witness);
      }
      out += "\n";
    }
  }
  return out;
}

std::string render_report_json(const ConfigurationReport& report) {
  using detail::Json;
  auto candidate_to_json = [](const SetupCandidate& c) {
    Json j;
    j["assignment"] = c.assignment.model_for_component;
    j["models"] = c.model_ids;
    j["total_cost"] = c.total_cost;
    j["valid"] = c.valid;
    if (c.composed_contract) j["contract"] = detail::contract_to_json(*c.composed_contract);
    if (!c.valid) {
      j["rejection"] = c.rejection;
      if (!c.diagnostics.empty()) {
        Json d = Json::array();
        for (const auto& diag : c.diagnostics) d.push_back(detail::diagnostic_to_json(diag));
        j["diagnostics"] = std::move(d);
      }
      if (!c.refinement_failed_side.empty()) j["failed_side"] = c.refinement_failed_side;
      if (c.witness && c.composed_contract)
        j["witness"] = detail::valuation_to_json(c.composed_contract->alphabet(), *c.witness);
    }
    return j;
  };
  Json j;
  j["kind"] = "configuration-report";
  j["test_case"] = report.test_case_id;
  j["strict_refinement"] = report.strict_refinement;
  Json valid = Json::array();
  for (const auto& c : report.valid) valid.push_back(candidate_to_json(c));
  j["valid"] = std::move(valid);
  Json rejected = Json::array();
  for (const auto& c : report.rejected) rejected.push_back(candidate_to_json(c));
  j["rejected"] = std::move(rejected);
  return j.dump(2) + "\n";
}

}  // namespace simval
