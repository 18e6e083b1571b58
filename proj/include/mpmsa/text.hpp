#pragma once

#include <string>
#include <vector>

namespace mpmsa {

// Shortest round-trip representation.
std::string format_shortest(double v);
// 17 significant digits, as written to CSV.
std::string format17(double v);

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);
// Strict parsers; throw ConfigError naming `what` on malformed input.
double parse_double(const std::string& s, const std::string& what);
long long parse_integer(const std::string& s, const std::string& what);

}  // namespace mpmsa
