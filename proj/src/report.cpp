#include "adlab/report.hpp"

#include <vector>

namespace adlab {
namespace {

// Depth-first flatten: scalars land under dot-joined keys; "exact"/"float"
// wrappers collapse to their payload value.
void flatten(const Json& node, const std::string& prefix, Json& row) {
  if (node.is_object()) {
    if (node.size() == 1 && node.contains("exact")) {
      flatten(node.at("exact"), prefix, row);
      return;
    }
    if (node.contains("float") && (node.size() == 1 || (node.size() == 2 && node.contains("tol")))) {
      flatten(node.at("float"), prefix, row);
      return;
    }
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, row);
    }
    return;
  }
  if (node.is_array()) {
    std::size_t i = 0;
    for (const auto& value : node) {
      flatten(value, prefix + "." + std::to_string(i), row);
      ++i;
    }
    return;
  }
  row[prefix] = node;
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else {
    s = v.dump();
  }
  bool quote = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n') {
      quote = true;
      break;
    }
  }
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string rat_str(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

Json num_exact(const mpq_class& q) { return Json{{"exact", rat_str(q)}}; }

Json num_exact(const mpz_class& z) { return Json{{"exact", z.get_str()}}; }

Json num_exact(std::uint64_t v) { return Json{{"exact", std::to_string(v)}}; }

Json num_exact(std::int64_t v) { return Json{{"exact", std::to_string(v)}}; }

Json num_float(double v, std::optional<double> tol) {
  Json j;
  j["float"] = v;
  j["tol"] = tol ? Json(*tol) : Json(nullptr);
  return j;
}

Json report_shell(const Json& config) {
  Json r;
  r["schema"] = kSchemaVersion;
  r["artifact"] = Json{{"name", kArtifactName}, {"version", kArtifactVersion}};
  r["config"] = config;
  return r;
}

std::string report_to_csv(const Json& report) {
  std::vector<Json> rows;
  if (report.contains("records")) {
    for (const auto& rec : report.at("records")) {
      Json row = Json::object();
      flatten(rec, "", row);
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::string> columns;
  {
    Json seen = Json::object();
    for (const auto& row : rows) {
      for (const auto& [key, value] : row.items()) {
        (void)value;
        if (!seen.contains(key)) {
          seen[key] = true;
          columns.push_back(key);
        }
      }
    }
  }
  std::string out;
  out += "# schema: " + report.at("schema").get<std::string>() + "\n";
  if (report.contains("config")) {
    out += "# config: " + report.at("config").dump() + "\n";
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(Json(columns[i]));
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      if (row.contains(columns[i])) out += csv_cell(row.at(columns[i]));
    }
    out += '\n';
  }
  return out;
}

std::string report_without_timing(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy.dump(2);
}

}  // namespace adlab
