#pragma once

#include <charconv>
#include <cstdlib>
#include <string>
#include <system_error>

#include "hybridad/errors.hpp"

namespace hybridad {

// Shortest round-trip decimal form of a double, locale-independent.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        raise(Errc::ParseError, "not a number: '" + text + "'");
    return value;
}

} // namespace hybridad
