#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sigstream {

// Shortest round-trip decimal form (std::to_chars).  Used for every number
// written to disk so that reruns are byte-identical and reloads are exact.
std::string format_double(double value);
std::string format_int(std::int64_t value);

bool try_parse_double(std::string_view text, double& out);
bool try_parse_int(std::string_view text, std::int64_t& out);

// Splits on ','; no quoting rules (none of the file formats need them).
std::vector<std::string_view> split_fields(std::string_view line);

// Whole file as lines; tolerates trailing "\r" and a missing final newline.
std::vector<std::string> read_lines(const std::string& path);

void write_file(const std::string& path, const std::string& contents);

// "key=value" per line, keys unique; blank lines ignored.
std::map<std::string, std::string> read_key_values(const std::string& path);

}  // namespace sigstream
