#pragma once

#include <string>
#include <vector>

namespace rarenet {

// Shortest exact decimal for a double (17 significant digits round-trip).
std::string format_g17(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Splits a CSV-ish line on commas; no quoting (none of the formats need it).
std::vector<std::string> split_csv_line(const std::string& line);

double parse_double(const std::string& token);
long long parse_int(const std::string& token);

// Audit trailer appended to CSV artifacts: comment lines carrying the run
// config. Readers skip '#' lines wherever they appear.
std::string audit_comment_block(const std::string& audit_json);

}  // namespace rarenet
