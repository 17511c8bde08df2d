#include "simval/monitor.hpp"

#include <algorithm>

#include "json_detail.hpp"

namespace simval {

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::assumption_exit: return "assumption-exit";
    case ViolationKind::guarantee_breach: return "guarantee-breach";
    case ViolationKind::domain_exit: return "domain-exit";
  }
  return "?";
}

const char* monitor_verdict_name(MonitorVerdict v) {
  switch (v) {
    case MonitorVerdict::clean: return "clean";
    case MonitorVerdict::assumption_exits_only: return "assumption-exits-only";
    case MonitorVerdict::breaches: return "breaches";
  }
  return "?";
}

MonitorVerdict MonitorReport::verdict() const {
  if (guarantee_breaches > 0) return MonitorVerdict::breaches;
  if (assumption_exits > 0 || domain_exits > 0) return MonitorVerdict::assumption_exits_only;
  return MonitorVerdict::clean;
}

MonitorEntry make_monitor_entry(const Contract& contract, std::string model_id,
                                const Alphabet& monitoring_alphabet) {
  MonitorEntry entry;
  entry.contract_id = contract.id();
  entry.model_id = std::move(model_id);
  entry.assumption = contract.assumption().extend(monitoring_alphabet);
  entry.guarantee = contract.guarantee().extend(monitoring_alphabet);
  std::set<std::string> a_vars = entry.assumption.constrained_variables();
  std::set<std::string> g_vars = entry.guarantee.constrained_variables();
  entry.relevant = a_vars;
  entry.relevant.insert(g_vars.begin(), g_vars.end());
  entry.assumption_proj = entry.assumption.project(a_vars);
  entry.guarantee_proj = entry.guarantee.project(g_vars);
  return entry;
}

MonitorSpec generate_monitors(const Architecture& arch, const SetupAssignment& setup,
                              const Contract& test_case_contract) {
  ComposabilityResult cr = check_composability(arch, setup);
  if (!cr.ok())
    throw Error(errc::structural_error,
                "cannot generate monitors for a non-composable setup ('" +
                    cr.diagnostics.front().message + "')");
  Alphabet sigma = merge_alphabets(cr.plan->alphabet, test_case_contract.alphabet());

  MonitorSpec spec;
  spec.alphabet = sigma;
  std::vector<std::pair<std::string, const Contract*>> monitored;
  for (const auto& [component_id, model_id] : setup.model_for_component) {
    const SimulationModelDecl* model = arch.find_model(model_id);
    monitored.emplace_back(model_id, &model->contract);
  }
  std::sort(monitored.begin(), monitored.end());
  for (const auto& [model_id, contract] : monitored)
    spec.entries.push_back(make_monitor_entry(*contract, model_id, sigma));
  spec.entries.push_back(make_monitor_entry(test_case_contract, "", sigma));
  return spec;
}

namespace {

// Offending-variable attribution for a failed assertion: start from the
// variables whose atom fails in every box, then keep those whose removal
// from every box lets the row pass. An empty result means the boxes failed
// jointly and no single variable explains it.
std::vector<std::string> attribute_failure(const AssertionSet& failed, const Valuation& row) {
  if (failed.is_empty()) return {};
  const Alphabet& sigma = failed.alphabet();
  std::vector<std::string> candidates;
  for (const auto& decl : sigma.vars()) {
    bool fails_everywhere = true;
    for (const Box& box : failed.boxes()) {
      auto it = box.find(decl.name);
      if (it == box.end() || atom_contains(decl, it->second, row.at(decl.name))) {
        fails_everywhere = false;
        break;
      }
    }
    if (fails_everywhere) candidates.push_back(decl.name);
  }
  std::vector<std::string> offending;
  for (const auto& name : candidates) {
    bool passes_without = false;
    for (const Box& box : failed.boxes()) {
      bool ok = true;
      for (const auto& [var, atom] : box) {
        if (var == name) continue;
        if (!atom_contains(sigma.at(var), atom, row.at(var))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        passes_without = true;
        break;
      }
    }
    if (passes_without) offending.push_back(name);
  }
  return offending;
}

Valuation slice(const Valuation& row, const std::set<std::string>& names) {
  Valuation out;
  for (const auto& name : names) out.emplace(name, row.at(name));
  return out;
}

}  // namespace

TraceChecker::TraceChecker(MonitorSpec spec, MonitorOptions options)
    : spec_(std::move(spec)), options_(options) {}

void TraceChecker::feed(const TraceRow& row) {
  std::size_t row_number = report_.rows_checked + 1;
  if (report_.rows_checked > 0 && !(row.time > last_time_))
    throw TraceFormatError("time is not strictly increasing (" + format_number(row.time) +
                               " after " + format_number(last_time_) + ")",
                           row_number);
  last_time_ = row.time;
  report_.rows_checked = row_number;

  for (const MonitorEntry& entry : spec_.entries) {
    // Domain check first: out-of-domain values poison membership tests, so
    // assertion checks are skipped for this contract at this row.
    std::vector<std::string> out_of_domain;
    for (const auto& name : entry.relevant) {
      auto it = row.valuation.find(name);
      if (it == row.valuation.end())
        throw TraceFormatError("row is missing variable '" + name + "'", row_number);
      const VariableDecl& decl = spec_.alphabet.at(name);
      if (!value_matches_kind(decl, it->second))
        throw TraceFormatError("value for variable '" + name + "' has the wrong kind",
                               row_number);
      if (!value_in_domain(decl, it->second)) out_of_domain.push_back(name);
    }
    if (!out_of_domain.empty()) {
      report_.violations.push_back({ViolationKind::domain_exit, entry.contract_id,
                                    entry.model_id, row.time, row_number,
                                    std::move(out_of_domain)});
      ++report_.domain_exits;
      continue;
    }

    Valuation av = slice(row.valuation, entry.assumption_proj.alphabet().names());
    bool assumption_holds = entry.assumption_proj.contains(av);
    if (!assumption_holds) {
      report_.violations.push_back({ViolationKind::assumption_exit, entry.contract_id,
                                    entry.model_id, row.time, row_number,
                                    attribute_failure(entry.assumption_proj, av)});
      ++report_.assumption_exits;
    }
    if (assumption_holds || !options_.gate_guarantee_on_assumption) {
      Valuation v = slice(row.valuation, entry.guarantee_proj.alphabet().names());
      if (!entry.guarantee_proj.contains(v)) {
        report_.violations.push_back({ViolationKind::guarantee_breach, entry.contract_id,
                                      entry.model_id, row.time, row_number,
                                      attribute_failure(entry.guarantee_proj, v)});
        ++report_.guarantee_breaches;
      }
    }
  }
}

MonitorReport check_trace(const Trace& trace, const MonitorSpec& spec, MonitorOptions options) {
  for (const MonitorEntry& entry : spec.entries)
    for (const auto& name : entry.relevant)
      if (!trace.alphabet.contains(name))
        throw TraceFormatError("trace is missing column '" + name + "' required by contract '" +
                                   entry.contract_id + "'",
                               0);
  TraceChecker checker(spec, options);
  for (const TraceRow& row : trace.rows) checker.feed(row);
  return checker.report();
}

std::string render_monitor_report_text(const MonitorReport& report) {
  std::string out = "monitor report: " + std::string(monitor_verdict_name(report.verdict())) +
                    " (" + std::to_string(report.rows_checked) + " rows)\n";
  out += "  assumption exits:  " + std::to_string(report.assumption_exits) + "\n";
  out += "  guarantee breaches: " + std::to_string(report.guarantee_breaches) + "\n";
  out += "  domain exits:      " + std::to_string(report.domain_exits) + "\n";
  for (const auto& v : report.violations) {
    out += "  [" + std::string(violation_kind_name(v.kind)) + "] t=" + format_number(v.time) +
           " row " + std::to_string(v.row) + " contract " + v.contract_id;
    if (!v.model_id.empty()) out += " (model " + v.model_id + ")";
    if (!v.variables.empty()) {
      out += " variable";
      if (v.variables.size() > 1) out += "s";
      out += " ";
      for (std::size_t i = 0; i < v.variables.size(); ++i) {
        if (i) out += ", ";
        out += v.variables[i];
      }
    } else {
      out += " (joint constraint)";
    }
    out += "\n";
  }
  return out;
}

std::string render_monitor_report_json(const MonitorReport& report) {
  using detail::Json;
  Json j;
  j["kind"] = "monitor-report";
  j["verdict"] = monitor_verdict_name(report.verdict());
  j["rows_checked"] = report.rows_checked;
  j["counts"] = {{"assumption_exits", report.assumption_exits},
                 {"guarantee_breaches", report.guarantee_breaches},
                 {"domain_exits", report.domain_exits}};
  // Violations grouped per monitored contract, row-ordered within each.
  std::map<std::pair<std::string, std::string>, Json> groups;
  for (const auto& v : report.violations) {
    Json vj;
    vj["kind"] = violation_kind_name(v.kind);
    vj["time"] = v.time;
    vj["row"] = v.row;
    vj["variables"] = v.variables;
    auto key = std::make_pair(v.contract_id, v.model_id);
    if (!groups.count(key)) {
      Json g;
      g["contract"] = v.contract_id;
      if (!v.model_id.empty()) g["model"] = v.model_id;
      g["violations"] = Json::array();
      groups.emplace(key, std::move(g));
    }
    groups.at(key)["violations"].push_back(std::move(vj));
  }
  Json contracts = Json::array();
  for (auto& [key, g] : groups) contracts.push_back(std::move(g));
  j["contracts"] = std::move(contracts);
  return j.dump(2) + "\n";
}

}  // namespace simval
