#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace hepp {

/// Fixed decimal (never scientific) with `sig` significant digits, '.'
/// separator. Identical flags must yield byte-identical CSV, so all numeric
/// output funnels through here.
inline std::string format_sig(double v, int sig = 12) {
    if (std::isnan(v)) return "nan";
    if (v == 0) return "0.00000000000";
    const double a = std::abs(v);
    const int exponent = static_cast<int>(std::floor(std::log10(a)));
    int decimals = sig - 1 - exponent;
    if (decimals < 0) decimals = 0;
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace hepp
