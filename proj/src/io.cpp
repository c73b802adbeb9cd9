#include "sqwell/io.hpp"

#include <charconv>
#include <system_error>

#include <json.hpp>

namespace sqwell {

namespace {

std::string csvEscape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

nlohmann::ordered_json cellToJson(const Cell& cell) {
  using J = nlohmann::ordered_json;
  return std::visit(
      [](const auto& v) -> J {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else
          return v;
      },
      cell);
}

}  // namespace

std::string formatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string formatCell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<T, double>)
          return formatDouble(v);
        else if constexpr (std::is_same_v<T, long long>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return v;
      },
      cell);
}

void writeCsv(const Table& table, std::ostream& out, const MetaEntries& meta) {
  for (const auto& [key, value] : meta)
    out << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << csvEscape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csvEscape(formatCell(row[i]));
    }
    out << '\n';
  }
}

void writeJson(const Table& table, std::ostream& out, const MetaEntries& meta) {
  nlohmann::ordered_json doc;
  doc["unit"] = table.unit;
  if (!meta.empty()) {
    nlohmann::ordered_json metaObj;
    for (const auto& [key, value] : meta) metaObj[key] = value;
    doc["meta"] = metaObj;
  }
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rowObj;
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i)
      rowObj[table.columns[i]] = cellToJson(row[i]);
    doc["rows"].push_back(std::move(rowObj));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace sqwell
