#pragma once

// Locale-independent number <-> text conversion. Doubles are written in the
// shortest form that parses back to the same value.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace origami::text {

std::string format_double(double v);

/// Fixed notation with `decimals` digits after '.'.
std::string format_fixed(double v, int decimals);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<std::uint64_t> parse_uint(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace origami::text
