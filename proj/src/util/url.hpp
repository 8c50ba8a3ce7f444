#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace adtrace::util {

/// Parsed URL per RFC 3986. Only hierarchical http(s)-style URLs with an
/// authority are accepted; everything else fails to parse.
struct Url {
    std::string scheme;
    std::string userinfo;  // without the trailing '@', usually empty
    std::string host;
    std::string port;  // empty when absent
    std::string path;
    std::string query;     // without '?'
    std::string fragment;  // without '#'
    bool has_query = false;
    bool has_fragment = false;

    std::string to_string() const;
    // scheme://host[:port] with lowercase scheme/host and default ports removed
    std::string origin() const;
};

std::optional<Url> parse_url(std::string_view input);

// Resolves `ref` against `base` per RFC 3986 section 5 (merge + dot-segment
// removal). Returns nothing for refs that cannot produce an http(s) URL.
std::optional<Url> resolve_reference(const Url& base, std::string_view ref);

// Lowercases scheme/host, strips default ports, removes dot segments, drops
// the fragment, and gives an empty path the canonical "/" form.
Url normalize(const Url& u);

// Dedupe identity: normalized URL with query parameters sorted by key
// (stable for equal keys) and no fragment.
std::string canonical_url(const Url& u);
std::optional<std::string> canonical_url(std::string_view raw);

// application/x-www-form-urlencoded: space becomes '+', unreserved bytes
// pass through, everything else is percent-encoded (uppercase hex).
std::string form_urlencode(std::string_view s);

std::string percent_encode_path(std::string_view s);

}  // namespace adtrace::util
