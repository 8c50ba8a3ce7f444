#include "extract/product.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "extract/price.hpp"
#include "util/strings.hpp"

namespace adtrace::extract {

namespace {

bool valid_production_date(const std::string& v) {
    std::string t = util::trim(v);
    auto all_digits = [](std::string_view s) {
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return !s.empty();
    };
    if (t.size() == 4 && all_digits(t)) return true;  // year-only
    // ISO-8601 date prefix: YYYY-MM-DD...
    if (t.size() >= 10 && all_digits(t.substr(0, 4)) && t[4] == '-' &&
        all_digits(t.substr(5, 2)) && t[7] == '-' && all_digits(t.substr(8, 2)))
        return true;
    return false;
}

void set_field(std::optional<std::string>& field, const std::string& name, const std::string& value,
               Provenance source, ProductFields& out) {
    std::string t = util::trim(value);
    if (t.empty() || field.has_value()) return;
    field = t;
    out.provenance[name] = source;
}

const std::string* scraped_value(const std::map<std::string, std::string>& scraped,
                                 const std::string& key) {
    auto it = scraped.find(key);
    if (it == scraped.end() || util::trim(it->second).empty()) return nullptr;
    return &it->second;
}

}  // namespace

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Metadata: return "metadata";
        case Provenance::Scraper: return "scraper";
        case Provenance::PageContent: return "page-content";
    }
    return "unknown";
}

std::optional<Provenance> provenance_from_string(const std::string& s) {
    if (s == "metadata") return Provenance::Metadata;
    if (s == "scraper") return Provenance::Scraper;
    if (s == "page-content") return Provenance::PageContent;
    return std::nullopt;
}

ProductFields merge_product_fields(const MetadataSet& meta,
                                   const std::map<std::string, std::string>& scraped,
                                   const PageContent& page_content, ExtractDiagnostics& diag) {
    ProductFields out;
    out.text = page_content.text;
    out.provenance["text"] = Provenance::PageContent;

    // simple text fields: metadata first, then scraper
    struct TextField {
        std::optional<std::string> ProductFields::* member;
        const char* field_name;
        const char* meta_key;  // nullptr when metadata never carries it
    };
    const TextField kFields[] = {
        {&ProductFields::product, "product", "name"},
        {&ProductFields::description, "description", "description"},
        {&ProductFields::category, "category", "category"},
        {&ProductFields::seller, "seller", "seller"},
        {&ProductFields::image, "image", "image"},
        {&ProductFields::title, "title", nullptr},
        {&ProductFields::seller_type, "seller_type", nullptr},
        {&ProductFields::location, "location", nullptr},
    };
    for (const auto& f : kFields) {
        if (f.meta_key) {
            if (const std::string* v = meta.first(f.meta_key))
                set_field(out.*(f.member), f.field_name, *v, Provenance::Metadata, out);
        }
        if (const std::string* v = scraped_value(scraped, f.field_name))
            set_field(out.*(f.member), f.field_name, *v, Provenance::Scraper, out);
    }

    // production date keeps only ISO-8601 / year-only forms
    {
        const std::string* v = meta.first("productionDate");
        Provenance src = Provenance::Metadata;
        if (!v) {
            v = scraped_value(scraped, "production_date");
            src = Provenance::Scraper;
        }
        if (v) {
            if (valid_production_date(*v))
                set_field(out.production_date, "production_date", *v, src, out);
            else
                ++diag.invalid_production_dates;
        }
    }

    // price: metadata decimal beats the scraped string; >1% disagreement is
    // flagged but resolved in metadata's favor
    std::optional<util::Decimal> meta_price;
    if (const std::string* v = meta.first("price")) meta_price = util::Decimal::parse(*v);
    std::optional<ParsedPrice> scraped_price;
    if (const std::string* v = scraped_value(scraped, "price")) {
        scraped_price = parse_price_string(*v);
        if (scraped_price && scraped_price->ambiguous_currency) ++diag.ambiguous_currency;
    }
    if (meta_price) {
        out.price = *meta_price;
        out.provenance["price"] = Provenance::Metadata;
        if (scraped_price) {
            double a = meta_price->to_double();
            double b = scraped_price->amount.to_double();
            double larger = std::max(std::abs(a), std::abs(b));
            if (larger > 0 && std::abs(a - b) / larger > 0.01) ++diag.price_conflicts;
        }
    } else if (scraped_price) {
        out.price = scraped_price->amount;
        out.provenance["price"] = Provenance::Scraper;
    }

    // currency: explicit metadata code, then an explicit scraped value,
    // then the symbol found in the scraped price string
    if (const std::string* v = meta.first("priceCurrency")) {
        out.currency = *v;
        out.provenance["currency"] = Provenance::Metadata;
    } else if (const std::string* v = scraped_value(scraped, "currency")) {
        if (auto code = normalize_currency_code(*v)) {
            out.currency = *code;
            out.provenance["currency"] = Provenance::Scraper;
        }
    }
    if (!out.currency && scraped_price && scraped_price->currency) {
        out.currency = scraped_price->currency;
        out.provenance["currency"] = Provenance::Scraper;
    }

    // page-content fallbacks
    if (page_content.title) {
        set_field(out.title, "title", *page_content.title, Provenance::PageContent, out);
        set_field(out.product, "product", *page_content.title, Provenance::PageContent, out);
    }

    return out;
}

}  // namespace adtrace::extract
