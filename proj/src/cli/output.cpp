#include "casimir/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace casimir::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) { return c.numeric ? format_number(c.number) : c.text; }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const Metadata& meta, const Table& table) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << '\n';
  }
}

void write_json(std::ostream& out, const Metadata& meta, const Table& table) {
  nlohmann::ordered_json doc;
  auto& m = doc["metadata"];
  m = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta) m[key] = value;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      const auto& c = row[i];
      if (!c.numeric) r[table.columns[i]] = c.text;
      else if (c.integer) r[table.columns[i]] = static_cast<long long>(c.number);
      else if (std::isfinite(c.number)) r[table.columns[i]] = c.number;
      else r[table.columns[i]] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace casimir::cli
