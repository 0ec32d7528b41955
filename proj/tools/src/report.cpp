#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace killingbeck::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

namespace {

std::string to_csv(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json to_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return format_number(v);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void write(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    for (const auto& [key, value] : table.meta) out << "# " << key << '=' << to_csv(value) << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << to_csv(row[i]);
      out << '\n';
    }
    return;
  }
  if (!table.meta.empty()) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) meta[key] = to_json(value);
    out << nlohmann::ordered_json{{"meta", meta}}.dump() << '\n';
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = to_json(row[i]);
    out << obj.dump() << '\n';
  }
}

void write_error(const std::string& code, const std::string& message, Format format,
                 std::ostream& err) {
  if (format == Format::jsonl) {
    err << nlohmann::ordered_json{{"error", code}, {"message", message}}.dump() << '\n';
  } else {
    err << "error," << code << ',' << message << '\n';
  }
}

}  // namespace killingbeck::cli
