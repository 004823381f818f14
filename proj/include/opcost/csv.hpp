#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace opcost {

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string>;
using Row = std::vector<Cell>;

/// Render rows as RFC-4180-style CSV: header line, '\n' terminators, '.'
/// decimal separator, floats at 9 significant digits. Every row must match
/// the header width. Output is byte-stable across platforms.
std::string emit_table(const std::vector<std::string>& columns, const std::vector<Row>& rows);

/// Format one double the way emit_table does ("%.9g", C locale).
std::string format_number(double v);

}  // namespace opcost
