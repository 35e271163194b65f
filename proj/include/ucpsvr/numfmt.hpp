#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ucpsvr {

/// Shortest decimal form that parses back to the identical double.
std::string format_full(double value);

/// Fixed-point with `decimals` fractional digits ("0.2054", "98.0188").
std::string format_fixed(double value, int decimals = 4);

/// Four decimal places with trailing zeros and a trailing dot trimmed,
/// the rendering used in report param lines ("0.0078", "128", "0.5", "0").
std::string format_compact4(double value);

/// Strict full-string numeric parses; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace ucpsvr
