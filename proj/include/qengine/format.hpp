#pragma once

#include <charconv>
#include <string>

namespace qengine {

/// Shortest form with 17 significant digits, independent of the C++ locale.
inline std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace qengine
