#pragma once

// Tabular reports shared by every subcommand: CSV with a fixed column order
// and a JSON document carrying the same rows plus a summary block.
// Reals are written with 17 significant digits in CSV; JSON uses the
// shortest text that reads back to the same double.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vcmajor {

// monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

bool same_cell(const Cell& a, const Cell& b);  // NaN equals NaN

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws on width mismatch
  std::size_t column(const std::string& name) const;  // throws std::out_of_range
  const Cell& at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }
};

using Summary = std::vector<std::pair<std::string, Cell>>;

struct Report {
  std::string command;
  Table table;
  Summary summary;

  bool operator==(const Report& o) const;
};

std::string format_double(double v);  // %.17g, plus nan / inf / -inf
std::string cell_to_csv(const Cell& c);

std::string to_csv(const Table& t);
std::string summary_to_csv(const Summary& s);  // two columns: key,value
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

}  // namespace vcmajor
