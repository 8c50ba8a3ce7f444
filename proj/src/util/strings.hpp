#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adtrace::util {

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);

std::string trim(std::string_view s);

// Collapses runs of ASCII whitespace to a single space and trims the ends.
std::string collapse_ws(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Splits one CSV record, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

bool contains_ci(std::string_view haystack, std::string_view needle);

}  // namespace adtrace::util
