#ifndef SIMVAL_MONITOR_HPP
#define SIMVAL_MONITOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "simval/architecture.hpp"
#include "simval/trace.hpp"

namespace simval {

// One monitored contract, equalized to the monitoring alphabet. `relevant`
// holds the variables the contract actually constrains; domain checks and
// membership tests only look at those, so unrelated columns in a wider trace
// never trip this monitor.
struct MonitorEntry {
  std::string contract_id;
  std::string model_id;  // empty for the test-case monitor
  AssertionSet assumption;
  AssertionSet guarantee;
  std::set<std::string> relevant;

  // Projections onto the variables each assertion constrains; evaluated
  // per row (membership agrees with the full sets because the dropped
  // variables are unconstrained).
  AssertionSet assumption_proj;
  AssertionSet guarantee_proj;
};

struct MonitorSpec {
  Alphabet alphabet;
  std::vector<MonitorEntry> entries;
};

MonitorEntry make_monitor_entry(const Contract& contract, std::string model_id,
                                const Alphabet& monitoring_alphabet);

// One monitor per chosen model contract plus one for the test case contract.
MonitorSpec generate_monitors(const Architecture& arch, const SetupAssignment& setup,
                              const Contract& test_case_contract);

enum class ViolationKind { assumption_exit, guarantee_breach, domain_exit };

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::assumption_exit;
  std::string contract_id;
  std::string model_id;
  double time = 0.0;
  std::size_t row = 0;  // 1-based data row
  // Offending variables: removing their atoms from every box of the failed
  // assertion makes the row pass. Empty when no single variable explains the
  // failure; the violation then names the whole assertion.
  std::vector<std::string> variables;

  friend bool operator==(const Violation&, const Violation&) = default;
};

enum class MonitorVerdict { clean, assumption_exits_only, breaches };

const char* monitor_verdict_name(MonitorVerdict v);

struct MonitorReport {
  std::vector<Violation> violations;  // row-ordered
  std::size_t rows_checked = 0;
  std::size_t assumption_exits = 0;
  std::size_t guarantee_breaches = 0;
  std::size_t domain_exits = 0;

  // breaches when any guarantee was broken under a held assumption;
  // assumption-exits-only when the run merely left validity domains
  // (assumption exits and domain exits); clean otherwise.
  MonitorVerdict verdict() const;

  friend bool operator==(const MonitorReport&, const MonitorReport&) = default;
};

struct MonitorOptions {
  // When set (default), a guarantee breach is only reported at rows where the
  // same contract's assumption holds (the A => G reading). Clearing it
  // reports raw guarantee membership as well, for debugging.
  bool gate_guarantee_on_assumption = true;
};

// Streaming checker: feed rows in any chunking; the accumulated report is
// identical to a single pass. One instance per trace; instances are
// independent, feeding one instance is single-threaded.
class TraceChecker {
public:
  explicit TraceChecker(MonitorSpec spec, MonitorOptions options = {});

  void feed(const TraceRow& row);  // TraceFormatError on malformed rows
  const MonitorReport& report() const { return report_; }

private:
  MonitorSpec spec_;
  MonitorOptions options_;
  MonitorReport report_;
  double last_time_ = 0.0;
};

// Single pass over a recorded trace. The trace alphabet must cover every
// variable the monitors reference.
MonitorReport check_trace(const Trace& trace, const MonitorSpec& spec,
                          MonitorOptions options = {});

std::string render_monitor_report_text(const MonitorReport& report);
std::string render_monitor_report_json(const MonitorReport& report);

}  // namespace simval

#endif  // SIMVAL_MONITOR_HPP
