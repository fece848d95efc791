#include "conelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace conelab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return std::get<std::string>(c);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) throw std::invalid_argument("table row width mismatch");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) return std::string("\"") + format_double(v) + "\"";
    return format_double(v);
  }
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return "\"" + json_escape(std::get<std::string>(c)) + "\"";
}

}  // namespace

std::string report_json(const std::string& subcommand, const std::string& config_json,
                        const Table& table, bool pass, double max_residual) {
  std::ostringstream os;
  os << "{\"subcommand\":\"" << json_escape(subcommand) << "\",";
  os << "\"config\":" << (config_json.empty() ? "null" : config_json) << ",";
  os << "\"rows\":[";
  for (size_t r = 0; r < table.rows.size(); ++r) {
    os << (r ? "," : "") << "{";
    for (size_t i = 0; i < table.header.size(); ++i) {
      os << (i ? "," : "") << "\"" << json_escape(table.header[i])
         << "\":" << json_cell(table.rows[r][i]);
    }
    os << "}";
  }
  os << "],";
  os << "\"pass\":" << (pass ? "true" : "false") << ",";
  os << "\"max_residual\":" << format_double(max_residual) << "}";
  return os.str();
}

}  // namespace conelab
