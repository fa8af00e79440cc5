#include "nonlocal/cli/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nonlocal/errors.hpp"

#ifndef NONLOCAL_LAB_VERSION
#define NONLOCAL_LAB_VERSION "0.0.0"
#endif

namespace nonlocal::cli {

const char* tool_version() { return NONLOCAL_LAB_VERSION; }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}

}  // namespace

std::string render_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::string out = std::string("# tool_version=") + tool_version() + "\n";
  append_line(out, header);
  for (const auto& row : rows) append_line(out, row);
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw Error(ErrorCode::config, "cannot open output file " + path);
  file << render_csv(header, rows);
  if (!file) throw Error(ErrorCode::config, "failed writing " + path);
}

std::string csv_body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace nonlocal::cli
