#pragma once

#include <string>
#include <vector>

namespace nonlocal::cli {

const char* tool_version();

/// %.17g; every number written by the tool goes through this.
std::string format_number(double v);

/// Quotes a text field when it contains a comma, quote or newline.
std::string quote_field(const std::string& text);

using CsvRow = std::vector<std::string>;

/// "# tool_version=..." line, header, rows.  Fields are written verbatim.
std::string render_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// Writes render_csv to path, creating parent directories.
void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

/// The text with leading '#' lines removed.
std::string csv_body(const std::string& text);

}  // namespace nonlocal::cli
