#pragma once

// CSV emission for solver traces and certification reports. All floats use
// shortest round-trip formatting; headers are mandatory; lines end with LF.

#include <iosfwd>
#include <string>
#include <vector>

#include "sfgm/certify.hpp"
#include "sfgm/solver.hpp"

namespace sfgm {

// Shortest decimal string that parses back to the same 64-bit value.
std::string format_double(double value);

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace);
void write_certification_csv(std::ostream& out, const std::vector<BoundReport>& reports);

std::string trace_csv(const std::vector<IterationRecord>& trace);
std::string certification_csv(const std::vector<BoundReport>& reports);

// Reads back a trace written by write_trace_csv (used for offline
// re-certification of the lambda column). Throws ParseError on malformed
// input with 1-based line numbers.
std::vector<IterationRecord> read_trace_csv(std::istream& in);

}  // namespace sfgm
