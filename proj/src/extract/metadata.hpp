#pragma once

#include <map>
#include <string>
#include <vector>

#include "html/dom.hpp"

namespace adtrace::extract {

enum class MetadataSyntax { JsonLd, Microdata, OpenGraph, Rdfa };

const char* to_string(MetadataSyntax syntax);

/// One product-shaped block of embedded metadata, normalized onto a flat
/// key set: name, description, price, priceCurrency, image, seller,
/// category, productionDate, availability.
struct MetadataEntry {
    MetadataSyntax syntax;
    std::map<std::string, std::string> properties;
};

struct MetadataSet {
    std::vector<MetadataEntry> entries;
    size_t skipped_jsonld_blocks = 0;  // malformed JSON, counted not fatal

    const std::string* first(const std::string& key) const;
};

// Collects JSON-LD Product/Offer objects, microdata Product scopes,
// OpenGraph/product meta properties, and RDFa property attributes. Price
// values that do not parse as decimals and currency values that are not
// 3-letter codes are dropped from the entry.
MetadataSet extract_embedded_metadata(const html::Node& root);

}  // namespace adtrace::extract
