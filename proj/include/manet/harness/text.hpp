#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace manet::text {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Strict numeric parsers; throw std::invalid_argument on trailing junk.
double parse_double(std::string_view s);
std::uint64_t parse_uint(std::string_view s);
bool parse_bool(std::string_view s);

}  // namespace manet::text
