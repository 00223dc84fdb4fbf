#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "erw/error.hpp"

namespace erw::io {

using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;
using Entries = std::vector<std::pair<std::string, Cell>>;

/// Column names, typed rows and a metadata block (config echo, code version, summaries).
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Entries metadata;
  Entries config;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw DomainError("row arity " + std::to_string(row.size()) + " does not match " +
                        std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
};

enum class Format { csv, json };

/// Reals at 17 significant digits, which round-trips every double.
inline std::string format_real(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace detail {

inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

inline std::string cell_json(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return std::isfinite(v) ? format_real(v) : "null"; }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  };
  return std::visit(Visitor{}, cell);
}

inline std::string entries_json(const Entries& entries) {
  std::string out = "{";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) {
      out += ",";
    }
    out += nlohmann::json(entries[i].first).dump() + ":" + cell_json(entries[i].second);
  }
  return out + "}";
}

}  // namespace detail

inline std::string emit_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + detail::csv_field(table.columns[c]);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += (c ? "," : "") + detail::csv_field(detail::cell_text(row[c]));
    }
    out += "\n";
  }
  return out;
}

/// {"metadata": {..., "config": {...}}, "rows": [{column: value, ...}, ...]}
inline std::string emit_json(const ResultTable& table) {
  std::string out = "{\"metadata\":";
  std::string metadata = detail::entries_json(table.metadata);
  metadata.pop_back();
  out += metadata + (table.metadata.empty() ? "" : ",") + "\"config\":" + detail::entries_json(table.config) + "}";
  out += ",\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r ? ",\n" : "\n";
    Entries row;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      row.emplace_back(table.columns[c], table.rows[r][c]);
    }
    out += detail::entries_json(row);
  }
  out += "\n]}\n";
  return out;
}

inline std::string emit(const ResultTable& table, Format format) {
  return format == Format::csv ? emit_csv(table) : emit_json(table);
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  file.flush();
  if (!file) {
    throw IoError("failed writing '" + path + "'");
  }
}

}  // namespace erw::io
