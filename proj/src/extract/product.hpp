#pragma once

#include <map>
#include <optional>
#include <string>

#include "extract/content.hpp"
#include "extract/metadata.hpp"
#include "util/decimal.hpp"

namespace adtrace::extract {

enum class Provenance { Metadata, Scraper, PageContent };

const char* to_string(Provenance p);
std::optional<Provenance> provenance_from_string(const std::string& s);

/// Structured product attributes pulled from one page. `text` is always
/// present; everything else is sparse. Provenance records which strategy
/// produced each populated field.
struct ProductFields {
    std::optional<std::string> title;
    std::string text;
    std::optional<std::string> product;
    std::optional<std::string> description;
    std::optional<std::string> category;
    std::optional<std::string> production_date;
    std::optional<util::Decimal> price;
    std::optional<std::string> currency;
    std::optional<std::string> seller;
    std::optional<std::string> seller_type;
    std::optional<std::string> location;
    std::optional<std::string> image;
    std::map<std::string, Provenance> provenance;
};

/// Extraction tallies surfaced on the CLI summary.
struct ExtractDiagnostics {
    size_t pages_parsed = 0;
    size_t metadata_blocks_skipped = 0;
    size_t price_conflicts = 0;
    size_t ambiguous_currency = 0;
    size_t invalid_production_dates = 0;
};

// Combines the three strategies with per-field precedence
// metadata > induced-scraper value > page content (title falls back into
// product). Scraped price strings are parsed with the currency-symbol
// table; a metadata/scraper price disagreement above 1% keeps the metadata
// value and counts a price conflict.
ProductFields merge_product_fields(const MetadataSet& meta,
                                   const std::map<std::string, std::string>& scraped,
                                   const PageContent& page_content, ExtractDiagnostics& diag);

}  // namespace adtrace::extract
