// simval command line: validate project files, compose and divide contracts,
// configure simulation setups for test cases, and check recorded traces
// against the configured contracts.
//
// Exit codes: 0 success / refinement holds / no violations;
//             1 semantic negative (refinement fails, no valid setup, violations);
//             2 input or usage error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simval/monitor.hpp"
#include "simval/parser.hpp"
#include "simval/project.hpp"

namespace {

using simval::Contract;
using simval::Error;
using simval::Project;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const Contract& contract_or_fail(const Project& project, const std::string& id) {
  if (const Contract* c = project.find_contract(id)) return *c;
  throw Error(simval::errc::dangling_reference, "no contract with id '" + id + "'");
}

Contract compose_ids(const Project& project, const std::vector<std::string>& ids) {
  std::vector<Contract> contracts;
  for (const auto& id : ids) contracts.push_back(contract_or_fail(project, id));
  return simval::compose_all(contracts);
}

nlohmann::json contract_json(const Contract& c) {
  nlohmann::json j;
  j["id"] = c.id();
  nlohmann::json names = nlohmann::json::array();
  for (const auto& decl : c.alphabet().vars()) names.push_back(decl.name);
  j["alphabet"] = std::move(names);
  j["assume"] = simval::render_assertion(c.assumption());
  j["guarantee"] = simval::render_assertion(c.guarantee());
  if (!c.meta().empty()) j["meta"] = c.meta();
  return j;
}

void print_contract(const Contract& c, bool machine) {
  if (machine)
    std::cout << contract_json(c).dump(2) << "\n";
  else
    std::cout << simval::render_contract_text(c);
}

simval::SetupAssignment assignment_from_models(const Project& project,
                                               const std::vector<std::string>& model_ids) {
  simval::SetupAssignment setup;
  for (const auto& id : model_ids) {
    const simval::SimulationModelDecl* model = project.architecture.find_model(id);
    if (!model)
      throw Error(simval::errc::dangling_reference, "no model with id '" + id + "'");
    auto [it, fresh] = setup.model_for_component.emplace(model->component_id, id);
    if (!fresh)
      throw Error(simval::errc::structural_error,
                  "models '" + it->second + "' and '" + id + "' implement the same component");
  }
  return setup;
}

int run_validate(const Project& project, bool machine) {
  bool all_ok = true;
  nlohmann::json out;
  out["kind"] = "validation-report";
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& model : project.architecture.models()) {
    const simval::ComponentDecl* component =
        project.architecture.find_component(model.component_id);
    simval::PortPartition partition = component->partition();
    bool compatible = simval::is_compatible(model.contract, partition);
    bool consistent = simval::is_consistent(model.contract, partition);
    all_ok = all_ok && compatible && consistent;
    if (machine) {
      nlohmann::json e;
      e["model"] = model.id;
      e["contract"] = model.contract.id();
      e["compatible"] = compatible;
      e["consistent"] = consistent;
      entries.push_back(std::move(e));
    } else {
      std::cout << "model " << model.id << ": contract " << model.contract.id()
                << (compatible ? " compatible" : " NOT-compatible")
                << (consistent ? " consistent" : " NOT-consistent") << "\n";
    }
  }
  // Variables controlled more than once are a structural defect even before
  // any setup is chosen.
  std::map<std::string, std::vector<std::string>> controllers;
  for (const auto& component : project.architecture.components())
    for (const auto& port : component.ports)
      if (port.direction == simval::PortDirection::controlled)
        controllers[port.variable.name].push_back(component.id);
  nlohmann::json conflicts = nlohmann::json::array();
  for (const auto& [name, owners] : controllers) {
    if (owners.size() > 1) {
      all_ok = false;
      if (machine) {
        conflicts.push_back({{"variable", name}, {"controllers", owners}});
      } else {
        std::cout << "variable " << name << " has " << owners.size() << " sources\n";
      }
    }
  }
  if (machine) {
    out["models"] = std::move(entries);
    out["multiple_controllers"] = std::move(conflicts);
    out["ok"] = all_ok;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (all_ok ? "project is valid\n" : "project has findings\n");
  }
  return all_ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contract-based configuration of sufficiently valid simulation setups"};
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  std::string project_path;
  std::string contracts_csv, top_id, by_id, sub_csv, super_id, test_case_id, setup_csv,
      trace_path;
  bool strict = false;
  bool ungated = false;
  std::size_t limit = 10000;

  CLI::App* validate = app.add_subcommand("validate", "parse and check a project file");
  validate->add_option("project", project_path, "project file")->required();

  CLI::App* compose_cmd = app.add_subcommand("compose", "compose contracts in the given order");
  compose_cmd->add_option("project", project_path, "project file")->required();
  compose_cmd->add_option("--contracts", contracts_csv, "comma-separated contract ids")
      ->required();

  CLI::App* quotient_cmd =
      app.add_subcommand("quotient", "requirement left over after dividing out a contract");
  quotient_cmd->add_option("project", project_path, "project file")->required();
  quotient_cmd->add_option("--top", top_id, "contract to reach")->required();
  quotient_cmd->add_option("--by", by_id, "contract already in place")->required();

  CLI::App* refine_cmd = app.add_subcommand("refine", "check refinement between contracts");
  refine_cmd->add_option("project", project_path, "project file")->required();
  refine_cmd
      ->add_option("--sub", sub_csv,
                   "refining contract id (a comma-separated list is composed first)")
      ->required();
  refine_cmd->add_option("--super", super_id, "refined contract id")->required();
  refine_cmd->add_flag("--strict-refinement", strict,
                       "compare the contracts exactly as written instead of their saturated forms");

  CLI::App* configure_cmd =
      app.add_subcommand("configure", "enumerate and rank valid simulation setups");
  configure_cmd->add_option("project", project_path, "project file")->required();
  configure_cmd->add_option("--test-case", test_case_id, "test case id")->required();
  configure_cmd->add_flag("--strict-refinement", strict,
                          "use the literal refinement check");
  configure_cmd->add_option("--limit", limit, "candidate enumeration guard")
      ->capture_default_str();

  CLI::App* monitor_cmd =
      app.add_subcommand("monitor", "check a recorded trace against a configured setup");
  monitor_cmd->add_option("project", project_path, "project file")->required();
  monitor_cmd->add_option("--test-case", test_case_id, "test case id")->required();
  monitor_cmd->add_option("--setup", setup_csv, "comma-separated model ids")->required();
  monitor_cmd->add_option("--trace", trace_path, "trace CSV file")->required();
  monitor_cmd->add_flag("--ungated", ungated,
                        "also check guarantees at rows where the assumption fails");

  // App-level options like --format may come before or after the subcommand.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  bool machine = format == "machine";

  try {
    Project project = simval::load_project_file(project_path);

    if (*validate) return run_validate(project, machine);

    if (*compose_cmd) {
      print_contract(compose_ids(project, split_ids(contracts_csv)), machine);
      return kOk;
    }

    if (*quotient_cmd) {
      Contract q =
          simval::quotient(contract_or_fail(project, top_id), contract_or_fail(project, by_id));
      print_contract(q, machine);
      return kOk;
    }

    if (*refine_cmd) {
      Contract sub = compose_ids(project, split_ids(sub_csv));
      Contract super = contract_or_fail(project, super_id);
      auto [esub, esuper] = simval::equalize_alphabets(sub, super);
      simval::RefinementCheck rc = simval::check_refinement(esub, esuper, strict);
      if (machine) {
        nlohmann::json j;
        j["kind"] = "refinement-report";
        j["sub"] = sub.id();
        j["super"] = super.id();
        j["strict"] = strict;
        j["holds"] = rc.holds;
        if (!rc.holds) {
          j["failed_side"] = rc.failed_side;
          if (rc.witness) {
            nlohmann::json w = nlohmann::json::object();
            for (const auto& [name, value] : *rc.witness) {
              const simval::VariableDecl& decl = esub.alphabet().at(name);
              if (const double* d = std::get_if<double>(&value))
                w[name] = *d;
              else
                w[name] = std::get<std::string>(value);
              (void)decl;
            }
            j["witness"] = std::move(w);
          }
        }
        std::cout << j.dump(2) << "\n";
      } else {
        if (rc.holds) {
          std::cout << sub.id() << " refines " << super.id() << "\n";
        } else {
          std::cout << sub.id() << " does not refine " << super.id() << " (fails on the "
                    << rc.failed_side << ")\n";
          if (rc.witness) {
            std::cout << "witness:";
            for (const auto& [name, value] : *rc.witness)
              std::cout << " " << name << "="
                        << simval::value_to_text(esub.alphabet().at(name), value);
            std::cout << "\n";
          }
        }
      }
      return rc.holds ? kOk : kNegative;
    }

    if (*configure_cmd) {
      const simval::TestCaseSpec* tc = project.find_test_case(test_case_id);
      if (!tc)
        throw Error(simval::errc::dangling_reference,
                    "no test case with id '" + test_case_id + "'");
      simval::ConfigureOptions options;
      options.strict_refinement = strict;
      options.candidate_limit = limit;
      simval::ConfigurationReport report =
          simval::configure(project.architecture, *tc, options);
      std::cout << (machine ? simval::render_report_json(report)
                            : simval::render_report_text(report));
      return report.valid.empty() ? kNegative : kOk;
    }

    if (*monitor_cmd) {
      const simval::TestCaseSpec* tc = project.find_test_case(test_case_id);
      if (!tc)
        throw Error(simval::errc::dangling_reference,
                    "no test case with id '" + test_case_id + "'");
      simval::SetupAssignment setup =
          assignment_from_models(project, split_ids(setup_csv));
      Contract tc_contract = simval::build_test_case_contract(*tc, project.architecture);
      simval::MonitorSpec spec =
          simval::generate_monitors(project.architecture, setup, tc_contract);
      simval::Trace trace = simval::load_trace_csv_file(trace_path, spec.alphabet);
      simval::MonitorOptions options;
      options.gate_guarantee_on_assumption = !ungated;
      simval::MonitorReport report = simval::check_trace(trace, spec, options);
      std::cout << (machine ? simval::render_monitor_report_json(report)
                            : simval::render_monitor_report_text(report));
      return report.violations.empty() ? kOk : kNegative;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
