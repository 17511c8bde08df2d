#include "simval/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace simval {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

Trace load_trace_csv(const std::string& text, const Alphabet& declared) {
  std::istringstream in(text);
  std::string line;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    header = split_csv(t);
    break;
  }
  if (header.empty())
    throw TraceFormatError("trace has no header line", 0);
  if (header[0] != "time")
    throw TraceFormatError("first trace column must be named 'time', found '" + header[0] + "'",
                           0);

  std::vector<const VariableDecl*> columns;
  for (std::size_t i = 1; i < header.size(); ++i) {
    const VariableDecl* decl = declared.find(header[i]);
    if (!decl)
      throw Error(errc::unknown_variable,
                  "trace column '" + header[i] + "' does not name a declared variable");
    for (const auto* seen : columns)
      if (seen->name == decl->name)
        throw TraceFormatError("duplicate trace column '" + decl->name + "'", 0);
    columns.push_back(decl);
  }

  Trace trace;
  {
    std::vector<VariableDecl> vars;
    for (const auto* c : columns) vars.push_back(*c);
    trace.alphabet = Alphabet(std::move(vars));
  }

  std::size_t row_number = 0;
  double last_time = 0.0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    ++row_number;
    std::vector<std::string> cells = split_csv(t);
    if (cells.size() != header.size())
      throw TraceFormatError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             row_number);
    TraceRow row;
    {
      double v = 0.0;
      const char* first = cells[0].data();
      const char* last = first + cells[0].size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw TraceFormatError("unparseable time value '" + cells[0] + "'", row_number);
      row.time = v;
    }
    if (row_number > 1 && !(row.time > last_time))
      throw TraceFormatError("time is not strictly increasing (" + format_number(row.time) +
                                 " after " + format_number(last_time) + ")",
                             row_number);
    last_time = row.time;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto value = try_value_from_text(*columns[i], cells[i + 1]);
      if (!value)
        throw TraceFormatError("value '" + cells[i + 1] + "' is not a valid " +
                                   var_kind_name(columns[i]->kind) + " for variable '" +
                                   columns[i]->name + "'",
                               row_number);
      row.valuation.emplace(columns[i]->name, std::move(*value));
    }
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

Trace load_trace_csv_file(const std::string& path, const Alphabet& declared) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(errc::structural_error, "cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_trace_csv(buf.str(), declared);
}

}  // namespace simval
