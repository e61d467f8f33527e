#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace casimir::cli {

/// A cell is either a number or text.
struct Cell {
  bool numeric = true;
  bool integer = false;
  double number = 0.0;
  std::string text;

  Cell(double v) : number(v) {}  // NOLINT
  Cell(int v) : integer(true), number(v) {}  // NOLINT
  Cell(std::string s) : numeric(false), text(std::move(s)) {}  // NOLINT
  Cell(const char* s) : numeric(false), text(s) {}             // NOLINT
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Numbers are printed with 12 significant digits.
std::string format_number(double v);

/// '#'-prefixed "key: value" preamble, then an RFC 4180 header and rows.
void write_csv(std::ostream& out, const Metadata& meta, const Table& table);

/// {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]}.
void write_json(std::ostream& out, const Metadata& meta, const Table& table);

}  // namespace casimir::cli
