#pragma once
// Trace CSV: header "outer_iter,wall_seconds,objective", one row per
// evaluation, floats printed with 17 significant digits so the deterministic
// columns round-trip bit exactly.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "snake/solver.hpp"

namespace snake {

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records);
void write_trace_csv_file(const std::string& path, std::span<const TraceRecord> records);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace snake
