#include "simval/errors.hpp"

namespace simval {

const char* errc_name(errc code) {
  switch (code) {
    case errc::unknown_variable: return "UnknownVariable";
    case errc::missing_variable: return "MissingVariable";
    case errc::domain_violation: return "DomainViolation";
    case errc::alphabet_mismatch: return "AlphabetMismatch";
    case errc::not_a_super_alphabet: return "NotASuperAlphabet";
    case errc::variable_decl_conflict: return "VariableDeclConflict";
    case errc::syntax_error: return "SyntaxError";
    case errc::type_mismatch: return "TypeMismatch";
    case errc::out_of_domain_literal: return "OutOfDomainLiteral";
    case errc::schema_error: return "SchemaError";
    case errc::dangling_reference: return "DanglingReference";
    case errc::duplicate_id: return "DuplicateId";
    case errc::structural_error: return "StructuralError";
    case errc::no_models_for_component: return "NoModelsForComponent";
    case errc::target_component_assigned: return "TargetComponentAssigned";
    case errc::candidate_limit_exceeded: return "CandidateLimitExceeded";
    case errc::trace_format_error: return "TraceFormatError";
    case errc::evaluation_variable_uncontrolled: return "EvaluationVariableUncontrolled";
  }
  return "Error";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

ParseError::ParseError(errc code, const std::string& message, int line, int column,
                       std::vector<std::string> expected)
    : Error(code, message + " at line " + std::to_string(line) + ", column " +
                      std::to_string(column)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

TraceFormatError::TraceFormatError(const std::string& message, std::size_t row)
    : Error(errc::trace_format_error, message + " (row " + std::to_string(row) + ")"),
      row_(row) {}

}  // namespace simval
