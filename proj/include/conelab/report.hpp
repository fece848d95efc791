#pragma once

#include <string>
#include <variant>
#include <vector>

namespace conelab {

// Value cell for machine-readable reports. Doubles are rendered with 17
// significant digits so they round-trip exactly.
using Cell = std::variant<double, long long, std::string, bool>;

std::string format_double(double v);
std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

// {"subcommand": ..., "config": ..., "rows": [...], "pass": ..., "max_residual": ...}
std::string report_json(const std::string& subcommand, const std::string& config_json,
                        const Table& table, bool pass, double max_residual);

}  // namespace conelab
