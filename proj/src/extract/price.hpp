#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "util/decimal.hpp"

namespace adtrace::extract {

struct ParsedPrice {
    util::Decimal amount;
    std::optional<std::string> currency;  // ISO-4217
    bool ambiguous_currency = false;      // symbol shared by several currencies
};

// Parses marketplace price strings such as "US $1,500.00", "1.500,00 EUR" or
// "¥12000". Group/decimal separators are resolved by the currency's locale
// when known, otherwise by a digit-count heuristic (a single separator with
// exactly three trailing digits is grouping).
std::optional<ParsedPrice> parse_price_string(std::string_view raw,
                                              const std::optional<std::string>& currency_hint = {});

// True for currencies that write decimals with a comma (EUR, BRL, ...).
bool is_comma_decimal_currency(std::string_view iso_code);

std::optional<std::string> normalize_currency_code(std::string_view value);

}  // namespace adtrace::extract
