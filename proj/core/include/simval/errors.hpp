#ifndef SIMVAL_ERRORS_HPP
#define SIMVAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simval {

// Error categories raised by the library. Findings that are part of a result
// (composability diagnostics, monitor violations) are plain values, never
// exceptions.
enum class errc {
  unknown_variable,
  missing_variable,
  domain_violation,
  alphabet_mismatch,
  not_a_super_alphabet,
  variable_decl_conflict,
  syntax_error,
  type_mismatch,
  out_of_domain_literal,
  schema_error,
  dangling_reference,
  duplicate_id,
  structural_error,
  no_models_for_component,
  target_component_assigned,
  candidate_limit_exceeded,
  trace_format_error,
  evaluation_variable_uncontrolled,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message);
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

// Raised while reading assertion DSL text. Positions are 1-based;
// `expected` lists what would have been accepted at the point of rejection.
class ParseError : public Error {
public:
  ParseError(errc code, const std::string& message, int line, int column,
             std::vector<std::string> expected = {});
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Raised by trace ingestion and checking; `row` is the 1-based data row.
class TraceFormatError : public Error {
public:
  TraceFormatError(const std::string& message, std::size_t row);
  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

}  // namespace simval

#endif  // SIMVAL_ERRORS_HPP
