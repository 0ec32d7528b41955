#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace killingbeck::cli {

enum class Format { csv, jsonl };

// Empty cells print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;  // '#' lines in CSV

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// 12 significant digits, scientific; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

void write(const Table& table, Format format, std::ostream& out);
void write_error(const std::string& code, const std::string& message, Format format,
                 std::ostream& err);

}  // namespace killingbeck::cli
