#include "extract/price.hpp"

#include <cctype>
#include <unordered_set>
#include <vector>

#include "util/strings.hpp"

namespace adtrace::extract {

namespace {

struct SymbolRule {
    const char* symbol;
    const char* code;
    bool ambiguous;
};

// Longest symbols first so "US $" wins over "$". Covers the currencies of
// the large marketplaces this pipeline targets.
const std::vector<SymbolRule>& symbol_rules() {
    static const std::vector<SymbolRule> rules = {
        {"US $", "USD", false}, {"AU $", "AUD", false}, {"CA $", "CAD", false},
        {"NZ $", "NZD", false}, {"HK $", "HKD", false}, {"Mex$", "MXN", false},
        {"US$", "USD", false},  {"AU$", "AUD", false},  {"CA$", "CAD", false},
        {"NZ$", "NZD", false},  {"HK$", "HKD", false},  {"MX$", "MXN", false},
        {"R$", "BRL", false},   {"A$", "AUD", false},   {"C$", "CAD", false},
        {"S$", "SGD", false},   {"z\xC5\x82", "PLN", false},  // zł
        {"\xE2\x82\xAC", "EUR", false},                       // €
        {"\xC2\xA3", "GBP", false},                           // £
        {"\xE2\x82\xB9", "INR", false},                       // ₹
        {"\xE2\x82\xA9", "KRW", false},                       // ₩
        {"\xE2\x82\xBD", "RUB", false},                       // ₽
        {"\xE2\x82\xBA", "TRY", false},                       // ₺
        {"\xE2\x82\xB4", "UAH", false},                       // ₴
        {"\xE2\x82\xAA", "ILS", false},                       // ₪
        {"\xE0\xB8\xBF", "THB", false},                       // ฿
        {"\xE2\x82\xAB", "VND", false},                       // ₫
        {"\xC2\xA5", "JPY", true},                            // ¥ (also CNY)
        {"kr", "SEK", true},                                  // also NOK/DKK
        {"$", "USD", true},
    };
    return rules;
}

const std::unordered_set<std::string>& iso_codes() {
    static const std::unordered_set<std::string> codes = {
        "USD", "EUR", "GBP", "JPY", "CNY", "AUD", "CAD", "BRL", "PLN", "SEK", "NOK", "DKK",
        "CHF", "HKD", "SGD", "NZD", "MXN", "INR", "KRW", "RUB", "ZAR", "TRY", "ARS", "CLP",
        "COP", "PEN", "THB", "PHP", "MYR", "IDR", "VND", "UAH", "CZK", "HUF", "RON", "ILS",
        "AED", "SAR"};
    return codes;
}

bool word_boundary_at(std::string_view s, size_t pos, size_t len) {
    auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)); };
    bool left_ok = pos == 0 || !is_word(s[pos - 1]);
    bool right_ok = pos + len >= s.size() || !is_word(s[pos + len]);
    return left_ok && right_ok;
}

}  // namespace

bool is_comma_decimal_currency(std::string_view code) {
    static const std::unordered_set<std::string> comma = {"EUR", "BRL", "ARS", "CLP", "COP",
                                                          "VND", "IDR", "TRY", "RUB", "UAH",
                                                          "PLN", "SEK", "NOK", "DKK", "CZK",
                                                          "HUF", "RON"};
    return comma.count(std::string(code)) > 0;
}

std::optional<std::string> normalize_currency_code(std::string_view value) {
    std::string v = util::trim(value);
    if (v.size() == 3 && std::isalpha(static_cast<unsigned char>(v[0])) &&
        std::isalpha(static_cast<unsigned char>(v[1])) &&
        std::isalpha(static_cast<unsigned char>(v[2]))) {
        std::string up;
        for (char c : v) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        return up;
    }
    for (const auto& rule : symbol_rules()) {
        if (v == rule.symbol) return std::string(rule.code);
    }
    return std::nullopt;
}

std::optional<ParsedPrice> parse_price_string(std::string_view raw,
                                              const std::optional<std::string>& currency_hint) {
    std::string s = util::trim(raw);
    if (s.empty()) return std::nullopt;

    std::optional<std::string> currency;
    bool ambiguous = false;

    if (currency_hint) {
        currency = normalize_currency_code(*currency_hint);
    }
    if (!currency) {
        // explicit ISO code token beats a symbol
        for (size_t i = 0; i + 3 <= s.size() && !currency; ++i) {
            if (std::isupper(static_cast<unsigned char>(s[i])) &&
                word_boundary_at(s, i, 3)) {
                std::string cand = s.substr(i, 3);
                if (iso_codes().count(cand)) currency = cand;
            }
        }
    }
    if (!currency) {
        for (const auto& rule : symbol_rules()) {
            if (s.find(rule.symbol) != std::string::npos) {
                currency = std::string(rule.code);
                ambiguous = rule.ambiguous;
                break;
            }
        }
    }

    // numeric run: digits plus grouping/decimal characters
    size_t start = s.find_first_of("0123456789");
    if (start == std::string::npos) return std::nullopt;
    size_t end = start;
    auto is_num_char = [&](size_t i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) return true;
        if (c == '.' || c == ',' || c == ' ' || c == '\'') return true;
        // UTF-8 non-breaking space
        if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0xA0)
            return true;
        if (static_cast<unsigned char>(c) == 0xA0) return true;
        return false;
    };
    while (end < s.size() && is_num_char(end)) ++end;
    std::string run = s.substr(start, end - start);
    while (!run.empty() && !std::isdigit(static_cast<unsigned char>(run.back()))) run.pop_back();

    // strip space-like grouping
    std::string compact;
    for (size_t i = 0; i < run.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(run[i]);
        if (c == ' ' || c == '\'' || c == 0xA0) continue;
        if (c == 0xC2 && i + 1 < run.size() &&
            static_cast<unsigned char>(run[i + 1]) == 0xA0) {
            ++i;
            continue;
        }
        compact.push_back(run[i]);
    }

    size_t dots = 0, commas = 0;
    size_t last_dot = std::string::npos, last_comma = std::string::npos;
    for (size_t i = 0; i < compact.size(); ++i) {
        if (compact[i] == '.') {
            ++dots;
            last_dot = i;
        } else if (compact[i] == ',') {
            ++commas;
            last_comma = i;
        }
    }

    char decimal_sep = 0;
    if (dots > 0 && commas > 0) {
        decimal_sep = last_dot > last_comma ? '.' : ',';
    } else if (dots + commas == 1) {
        char sep = dots == 1 ? '.' : ',';
        size_t sep_pos = dots == 1 ? last_dot : last_comma;
        size_t after = compact.size() - sep_pos - 1;
        if (after == 3) {
            if (currency) {
                bool comma_locale = is_comma_decimal_currency(*currency);
                decimal_sep = (comma_locale == (sep == ',')) ? sep : 0;
            }
            // unknown currency: three trailing digits read as grouping
        } else if (after >= 1 && after <= 2) {
            decimal_sep = sep;
        }
        // 4+ digits after the separator: grouping-like, drop it
    } else if (dots + commas > 1) {
        decimal_sep = 0;  // repeated separator is grouping
    }

    std::string normalized;
    for (char c : compact) {
        if (std::isdigit(static_cast<unsigned char>(c)))
            normalized.push_back(c);
        else if (c == decimal_sep)
            normalized.push_back('.');
        // grouping chars dropped
    }
    auto amount = util::Decimal::parse(normalized);
    if (!amount || amount->negative()) return std::nullopt;

    ParsedPrice out;
    out.amount = *amount;
    out.currency = currency;
    out.ambiguous_currency = ambiguous && !currency_hint;
    return out;
}

}  // namespace adtrace::extract
