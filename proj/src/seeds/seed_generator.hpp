#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adtrace::seeds {

/// Input file is malformed; the message names the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Search-form URL template for one site. The template carries the literal
/// placeholder KEYWORD exactly once.
struct SitePattern {
    std::string domain;
    std::string template_url;
};

struct SpeciesEntry {
    std::string scientific_name;
    std::vector<std::string> english_names;
};

struct SeedUrl {
    std::string url;
    std::string domain;
    std::string keyword;  // original, unencoded
};

struct SeedSet {
    std::vector<SeedUrl> seeds;
    size_t skipped_empty_keywords = 0;
    size_t deduped = 0;
};

inline constexpr const char* kKeywordPlaceholder = "KEYWORD";

// Patterns file: UTF-8, '#' comments, "domain<TAB>template" lines. Throws
// ParseError on malformed lines, missing/duplicated placeholder, templates
// that do not substitute into an absolute http(s) URL, or duplicate
// (domain, template) pairs.
std::vector<SitePattern> load_patterns(const std::string& path);
std::vector<SitePattern> parse_patterns(const std::string& content, const std::string& origin);

// Species file: UTF-8 CSV with header "scientific_name,english_names";
// English names are ';'-separated within the second field.
std::vector<SpeciesEntry> load_species(const std::string& path);
std::vector<SpeciesEntry> parse_species(const std::string& content, const std::string& origin);

// Scientific name first, then English names, deduplicated case-insensitively
// keeping first-seen casing and order.
std::vector<std::string> expand_keywords(const std::vector<SpeciesEntry>& species);

// Cross-product of patterns and keywords, pattern-major / keyword-minor,
// with form-encoded keywords and exact-URL dedupe.
SeedSet generate_seeds(const std::vector<SitePattern>& patterns,
                       const std::vector<std::string>& keywords);

void write_seed_file(const SeedSet& seeds, const std::string& path);
std::vector<std::string> read_seed_file(const std::string& path);

}  // namespace adtrace::seeds
