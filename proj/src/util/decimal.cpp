#include "util/decimal.hpp"

#include <cctype>
#include <cstdlib>

namespace adtrace::util {

std::optional<Decimal> Decimal::parse(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t end = s.size();
    while (end > i && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    if (i >= end) return std::nullopt;

    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }

    int64_t int_part = 0;
    int64_t frac_part = 0;
    int frac_digits = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < end; ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            any_digit = true;
            if (!seen_point) {
                if (int_part > (INT64_MAX - (c - '0')) / 10) return std::nullopt;
                int_part = int_part * 10 + (c - '0');
            } else if (frac_digits < 4) {
                frac_part = frac_part * 10 + (c - '0');
                ++frac_digits;
            } else {
                // more than 4 fractional digits is outside the representable scale
                return std::nullopt;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    while (frac_digits < 4) {
        frac_part *= 10;
        ++frac_digits;
    }
    if (int_part > (INT64_MAX - frac_part) / kScale) return std::nullopt;
    int64_t units = int_part * kScale + frac_part;
    Decimal d;
    d.units_ = neg ? -units : units;
    return d;
}

Decimal Decimal::from_units(int64_t scaled_units) {
    Decimal d;
    d.units_ = scaled_units;
    return d;
}

std::string Decimal::to_string() const {
    int64_t u = units_;
    std::string sign;
    if (u < 0) {
        sign = "-";
        u = -u;
    }
    int64_t int_part = u / kScale;
    int64_t frac = u % kScale;
    std::string out = sign + std::to_string(int_part);
    if (frac != 0) {
        char buf[6];
        std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(frac));
        std::string f(buf);
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

}  // namespace adtrace::util
