#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace sqwell {

// Flat result tables with deterministic CSV and JSON serialization. Both
// formats carry the same numeric payload: doubles are written with full
// round-trip precision (17 significant digits in CSV, shortest round-trip
// form in JSON) and never pass through locale-dependent formatting.

/// One table cell; monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::string unit;  // unit tag for the table's pressure-like columns
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Key/value pairs emitted only when the caller requests metadata.
using MetaEntries = std::vector<std::pair<std::string, std::string>>;

/// Formats a double with 17 significant digits, '.' decimal separator,
/// no locale dependence; round-trips bit-exactly through parsing.
std::string formatDouble(double value);

/// Renders one cell the way the CSV writer would.
std::string formatCell(const Cell& cell);

/// Writes the table as CSV: optional '#' metadata lines, a header row,
/// one line per row.
void writeCsv(const Table& table, std::ostream& out,
              const MetaEntries& meta = {});

/// Writes the table as a single JSON object {"unit": ..., "rows": [...]},
/// with a "meta" object when metadata is supplied.
void writeJson(const Table& table, std::ostream& out,
               const MetaEntries& meta = {});

}  // namespace sqwell
