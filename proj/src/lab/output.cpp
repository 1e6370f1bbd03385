#include <cmath>
#include <cstdio>
#include <string>

#include "sp2/lab.hpp"

namespace sp2::lab {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  // nlohmann's dump of a lone string already handles escaping and UTF-8.
  out += nlohmann::json(s).dump();
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a floating-point marker so integers stay distinguishable from doubles.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_into(std::string& out, const nlohmann::json& v, int depth) {
  const std::string indent(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += indent;
        append_escaped(out, it.key());
        out += ": ";
        dump_into(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += indent;
        dump_into(out, v[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return v.dump();
}

}  // namespace

std::string dump_canonical(const nlohmann::json& value) {
  std::string out;
  dump_into(out, value, 0);
  out += '\n';
  return out;
}

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return dump_canonical(report.document);
  if (!report.table) throw ConfigError("csv output is only available for foliation and scan-einstein");
  std::string out;
  const auto& t = *report.table;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

}  // namespace sp2::lab
