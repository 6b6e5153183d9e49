#include "pflp/numfmt.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace pflp {

std::string format_exact(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

std::string format_sig6(double v) {
    std::array<char, 32> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return {buf.data(), static_cast<std::size_t>(len)};
}

bool parse_double(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

} // namespace pflp
