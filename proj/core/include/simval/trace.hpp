#ifndef SIMVAL_TRACE_HPP
#define SIMVAL_TRACE_HPP

#include <string>
#include <vector>

#include "simval/variable.hpp"

namespace simval {

struct TraceRow {
  double time = 0.0;
  Valuation valuation;
};

// A recorded run: strictly increasing timestamps, every row covering the
// trace alphabet. Values may lie outside declared domains; monitors flag
// those rows instead of the loader rejecting them.
struct Trace {
  Alphabet alphabet;
  std::vector<TraceRow> rows;
};

// CSV ingestion. The first header column must be exactly `time`; the
// remaining headers name variables declared in `declared`. Enumeration and
// boolean values are bare labels, numbers use decimal or scientific
// notation. Lines starting with '#' and blank lines are ignored.
// TraceFormatError (with the offending row) on non-monotone time, field
// count mismatches, or unparseable values.
Trace load_trace_csv(const std::string& text, const Alphabet& declared);
Trace load_trace_csv_file(const std::string& path, const Alphabet& declared);

}  // namespace simval

#endif  // SIMVAL_TRACE_HPP
