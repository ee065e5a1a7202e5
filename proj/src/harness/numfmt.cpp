#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "uavdc/harness.hpp"

namespace uavdc {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    // Round to six significant digits first, then print the rounded value
    // without an exponent.
    char sci[32];
    std::snprintf(sci, sizeof sci, "%.5e", v);
    const double rounded = std::strtod(sci, nullptr);
    const char* e = std::strchr(sci, 'e');
    const int exponent = std::atoi(e + 1);
    const int decimals = exponent >= 5 ? 0 : 5 - exponent;
    char out[400];
    std::snprintf(out, sizeof out, "%.*f", decimals, rounded);
    return out;
}

}  // namespace uavdc
