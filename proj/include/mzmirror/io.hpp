#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mzmirror::io {

/// Version stamped into every emitted JSON document.
inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip decimal form of `value`; independent of the C locale.
std::string format_number(double value);
std::string format_number(long long value);

/// Writes one CSV row: comma separated, '\n' terminated. Fields are emitted verbatim.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Parses a CSV stream produced by write_csv_row into rows of fields.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace mzmirror::io
