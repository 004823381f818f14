#include "opcost/csv.hpp"

#include <cinttypes>
#include <cstdio>

#include "opcost/errors.hpp"

namespace opcost {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_cell(std::string& out, const Cell& cell) {
  char buf[64];
  if (const double* d = std::get_if<double>(&cell)) {
    out += format_number(*d);
  } else if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
    std::snprintf(buf, sizeof buf, "%" PRId64, *i);
    out += buf;
  } else if (const std::uint64_t* u = std::get_if<std::uint64_t>(&cell)) {
    std::snprintf(buf, sizeof buf, "%" PRIu64, *u);
    out += buf;
  } else {
    out += quote_if_needed(std::get<std::string>(cell));
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string emit_table(const std::vector<std::string>& columns, const std::vector<Row>& rows) {
  if (columns.empty()) throw ValidationError("emit_table: no columns");
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += quote_if_needed(columns[c]);
  }
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw ValidationError("emit_table: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(columns.size()));
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      append_cell(out, rows[r][c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace opcost
