#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace oclab {

std::string format_double(double v);  // shortest round-trip decimal
double parse_double(std::string_view text);
long parse_int(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace oclab
