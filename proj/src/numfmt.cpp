#include "ucpsvr/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace ucpsvr {

std::string format_full(double value) {
    char buffer[64];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string format_fixed(double value, int decimals) {
    char buffer[64];
    int written = std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    // "-0.0000" reads as a distinct value; normalize it away.
    std::string text(buffer, static_cast<std::size_t>(written));
    if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') {
        text.erase(text.begin());
    }
    return text;
}

std::string format_compact4(double value) {
    std::string text = format_fixed(value, 4);
    if (text.find('.') != std::string::npos) {
        while (text.back() == '0') text.pop_back();
        if (text.back() == '.') text.pop_back();
    }
    return text;
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<long long> parse_integer(std::string_view text) {
    if (text.empty()) return std::nullopt;
    long long value = 0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace ucpsvr
