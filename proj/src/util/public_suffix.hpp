#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace adtrace::util {

/// Registrable ("site") domain of a hostname, resolved against a bundled
/// public-suffix snapshot: the public suffix plus one label, so
/// `www.ebay.co.uk` yields `ebay.co.uk` and `shop.example.com` yields
/// `example.com`. IP literals are returned unchanged. Hostnames that are
/// themselves a public suffix (or empty) yield nothing.
std::optional<std::string> registrable_domain(std::string_view host);

// Public-suffix portion of the host ("com", "co.uk", ...), lowercase.
std::optional<std::string> public_suffix(std::string_view host);

}  // namespace adtrace::util
