// io.hpp: numeric table emission. CSV is UTF-8, comma separated, LF line
// endings, one header row, numbers printed with 17 significant digits so a
// parse reproduces the written doubles exactly. JSON is an array of objects
// with alphabetically ordered keys.

#pragma once

#include <string>
#include <vector>

namespace otto::io {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// "%.17g" round-trip formatting for a single value.
std::string format_double(double x);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Parses what to_csv produced; throws std::runtime_error on malformed input.
Table parse_csv(const std::string& text);

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

} // namespace otto::io
