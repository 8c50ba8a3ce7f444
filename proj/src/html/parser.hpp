#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "html/dom.hpp"

namespace adtrace::html {

/// Result of parsing one fetched page body: an error-tolerant document tree
/// plus the character set that was actually used for decoding.
struct ParsedPage {
    std::string url;
    NodePtr root;  // Document node, never null
    std::string charset;

    ParsedPage() : root(std::make_unique<Node>()) {}
};

// Total function: never throws, never fails. Charset priority is the
// declared (transport-level) charset, then a <meta> declaration found in
// the first 1024 bytes, then UTF-8 with lossy decoding.
ParsedPage parse_html(std::string_view body, const std::optional<std::string>& declared_charset,
                      std::string url = "");

// Parses a body that is already UTF-8 text.
ParsedPage parse_html_utf8(std::string_view body, std::string url = "");

// Decodes character references ("&amp;", "&#233;", "&#x2019;") in-place.
std::string decode_entities(std::string_view s);

std::string encode_utf8(uint32_t code_point);

}  // namespace adtrace::html
