#pragma once

#include <string>
#include <string_view>

namespace pflp {

// Shortest text that parses back to exactly the same double.
std::string format_exact(double v);

// printf-style %.6g.
std::string format_sig6(double v);

// Parses the whole of `text` as a double; returns false on any leftover or error.
bool parse_double(std::string_view text, double& out);

} // namespace pflp
