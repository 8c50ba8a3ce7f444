#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace adtrace::util {

/// Fixed-point decimal with 4 fractional digits, backed by a signed 64-bit
/// integer. Covers decimal(18,4) without floating-point currency drift.
class Decimal {
public:
    static constexpr int64_t kScale = 10000;

    Decimal() = default;

    static std::optional<Decimal> parse(std::string_view s);
    static Decimal from_units(int64_t scaled_units);

    int64_t units() const { return units_; }
    bool negative() const { return units_ < 0; }

    // Canonical rendering: no thousands separators, trailing fractional
    // zeros trimmed ("1500", "19.99", "0.5").
    std::string to_string() const;

    double to_double() const { return static_cast<double>(units_) / kScale; }

    friend bool operator==(const Decimal& a, const Decimal& b) { return a.units_ == b.units_; }
    friend bool operator!=(const Decimal& a, const Decimal& b) { return a.units_ != b.units_; }
    friend bool operator<(const Decimal& a, const Decimal& b) { return a.units_ < b.units_; }

private:
    int64_t units_ = 0;
};

}  // namespace adtrace::util
