#include "snake/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snake {

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> records) {
  out << "outer_iter,wall_seconds,objective\n";
  char buf[96];
  for (const TraceRecord& rec : records) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", rec.outer_iter, rec.wall_seconds,
                  rec.objective);
    out << buf;
  }
}

void write_trace_csv_file(const std::string& path, std::span<const TraceRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  write_trace_csv(out, records);
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace csv: empty stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "outer_iter,wall_seconds,objective")
    throw std::invalid_argument("trace csv: unexpected header \"" + line + "\"");
  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string iter_tok, wall_tok, obj_tok;
    if (!std::getline(ls, iter_tok, ',') || !std::getline(ls, wall_tok, ',') ||
        !std::getline(ls, obj_tok))
      throw std::invalid_argument("trace csv: malformed row \"" + line + "\"");
    TraceRecord rec;
    rec.outer_iter = std::stol(iter_tok);
    rec.wall_seconds = std::stod(wall_tok);
    rec.solve_seconds = rec.wall_seconds;
    rec.objective = std::stod(obj_tok);
    records.push_back(rec);
  }
  return records;
}

}  // namespace snake
