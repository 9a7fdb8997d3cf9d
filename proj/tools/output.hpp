#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace tmsns::cli {

using Json = nlohmann::ordered_json;

// Flat key/value record: command echo + params, column header, data rows,
// footer scalars. Schema v1 renders as CSV (header row, data rows, footer
// comment lines prefixed '#') or as a single JSON object. Field order is
// fixed by insertion; no timestamps anywhere, so output is byte-identical
// across runs.
struct OutputRecord {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json footer = Json::object();
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string render_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

inline void write_csv(std::ostream& os, const OutputRecord& rec) {
  for (std::size_t c = 0; c < rec.columns.size(); ++c) {
    os << (c ? "," : "") << rec.columns[c];
  }
  os << "\n";
  for (const auto& row : rec.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << render_cell(row[c]);
    }
    os << "\n";
  }
  os << "# schema_version=1\n";
  os << "# command=" << rec.command << "\n";
  os << "#";
  for (const auto& [key, value] : rec.params.items()) {
    os << " " << key << "=" << render_cell(value);
  }
  os << "\n";
  for (const auto& [key, value] : rec.footer.items()) {
    os << "# " << key << "=" << render_cell(value) << "\n";
  }
}

inline void write_json(std::ostream& os, const OutputRecord& rec) {
  Json out = Json::object();
  out["schema_version"] = "1";
  out["command"] = rec.command;
  out["params"] = rec.params;
  Json rows = Json::array();
  for (const auto& row : rec.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size() && c < rec.columns.size(); ++c) {
      obj[rec.columns[c]] = row[c];
    }
    rows.push_back(std::move(obj));
  }
  out["rows"] = std::move(rows);
  out["footer"] = rec.footer;
  os << out.dump(2) << "\n";
}

inline void write_record(std::ostream& os, const OutputRecord& rec, const std::string& format) {
  if (format == "json") {
    write_json(os, rec);
  } else {
    write_csv(os, rec);
  }
}

}  // namespace tmsns::cli
