#include "vcmajor/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vcmajor {

using nlohmann::json;

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return a == b;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add_row: width mismatch");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == name) return k;
  throw std::out_of_range("no column named " + name);
}

bool Report::operator==(const Report& o) const {
  if (command != o.command || table.columns != o.table.columns || table.rows.size() != o.table.rows.size() ||
      summary.size() != o.summary.size())
    return false;
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      if (!same_cell(table.rows[r][c], o.table.rows[r][c])) return false;
  for (std::size_t k = 0; k < summary.size(); ++k)
    if (summary[k].first != o.summary[k].first || !same_cell(summary[k].second, o.summary[k].second)) return false;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json cell_to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // JSON has no NaN or infinities; spell them as strings.
          if (std::isnan(v) || std::isinf(v)) return json{{"real", format_double(v)}};
          return v;
        } else {
          return v;
        }
      },
      c);
}

Cell cell_from_json(const json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("real")) {
    const auto s = j.at("real").get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument("report_from_json: unsupported cell " + j.dump());
}

}  // namespace

std::string cell_to_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return quote_csv(v);
      },
      c);
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << quote_csv(t.columns[k]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_to_csv(row[k]);
    os << '\n';
  }
  return os.str();
}

std::string summary_to_csv(const Summary& s) {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : s) os << quote_csv(k) << ',' << cell_to_csv(v) << '\n';
  return os.str();
}

std::string to_json(const Report& r) {
  json doc;
  doc["command"] = r.command;
  doc["columns"] = r.table.columns;
  json rows = json::array();
  for (const auto& row : r.table.rows) {
    json obj = json::array();
    for (const auto& c : row) obj.push_back(cell_to_json(c));
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  json summary = json::array();
  for (const auto& [k, v] : r.summary) summary.push_back(json::array({k, cell_to_json(v)}));
  doc["summary"] = std::move(summary);
  return doc.dump(1) + "\n";
}

Report report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  Report r;
  r.command = doc.at("command").get<std::string>();
  r.table.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& c : row) cells.push_back(cell_from_json(c));
    r.table.add_row(std::move(cells));
  }
  for (const auto& kv : doc.at("summary")) r.summary.emplace_back(kv.at(0).get<std::string>(), cell_from_json(kv.at(1)));
  return r;
}

}  // namespace vcmajor
