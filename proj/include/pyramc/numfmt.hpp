#pragma once

#include <charconv>
#include <string>

namespace pyramc {

/// Shortest decimal form that round-trips to the same double.
inline std::string num_to_string(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace pyramc
