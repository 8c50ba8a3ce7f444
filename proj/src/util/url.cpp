#include "util/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "util/strings.hpp"

namespace adtrace::util {

namespace {

bool is_scheme_char(char c, bool first) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
    if (first) return false;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool valid_host(const std::string& host) {
    if (host.empty()) return false;
    if (host.front() == '[' && host.back() == ']') return host.size() > 2;  // IPv6 literal
    for (char c : host) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '-' || c == '.' || c == '_' || u >= 0x80) continue;
        return false;
    }
    if (host.front() == '.' || host.back() == '.') return false;
    return host.find("..") == std::string::npos;
}

// RFC 3986 5.2.4
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "/..") {
            input = "/";
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            size_t start = input.front() == '/' ? 1 : 0;
            size_t pos = input.find('/', start);
            output += input.substr(0, pos == std::string::npos ? input.size() : pos);
            input.erase(0, pos == std::string::npos ? input.size() : pos);
        }
    }
    return output;
}

std::string merge_paths(const Url& base, std::string_view ref_path) {
    if (!base.host.empty() && base.path.empty()) return "/" + std::string(ref_path);
    size_t pos = base.path.find_last_of('/');
    if (pos == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, pos + 1) + std::string(ref_path);
}

// Splits authority into userinfo/host/port. Returns false on malformed input.
bool parse_authority(std::string_view authority, Url& out) {
    size_t at = authority.find_last_of('@');
    if (at != std::string_view::npos) {
        out.userinfo = std::string(authority.substr(0, at));
        authority.remove_prefix(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
        size_t close = authority.find(']');
        if (close == std::string_view::npos) return false;
        out.host = std::string(authority.substr(0, close + 1));
        authority.remove_prefix(close + 1);
        if (!authority.empty()) {
            if (authority.front() != ':') return false;
            out.port = std::string(authority.substr(1));
        }
    } else {
        size_t colon = authority.find(':');
        if (colon == std::string_view::npos) {
            out.host = std::string(authority);
        } else {
            out.host = std::string(authority.substr(0, colon));
            out.port = std::string(authority.substr(colon + 1));
        }
    }
    for (char c : out.port)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return valid_host(out.host);
}

struct SplitRef {
    std::string scheme;
    bool has_authority = false;
    std::string authority;
    std::string path;
    bool has_query = false;
    std::string query;
    bool has_fragment = false;
    std::string fragment;
};

// Generic RFC 3986 reference splitter; does not require an authority.
SplitRef split_reference(std::string_view s) {
    SplitRef r;
    size_t frag = s.find('#');
    if (frag != std::string_view::npos) {
        r.has_fragment = true;
        r.fragment = std::string(s.substr(frag + 1));
        s = s.substr(0, frag);
    }
    // scheme must appear before any '/', '?' — and before the fragment cut above
    size_t colon = s.find(':');
    if (colon != std::string_view::npos && colon > 0) {
        bool ok = true;
        for (size_t i = 0; i < colon; ++i) {
            if (!is_scheme_char(s[i], i == 0)) {
                ok = false;
                break;
            }
        }
        size_t slash = s.find_first_of("/?");
        if (ok && (slash == std::string_view::npos || colon < slash)) {
            r.scheme = to_lower(s.substr(0, colon));
            s = s.substr(colon + 1);
        }
    }
    if (s.size() >= 2 && s[0] == '/' && s[1] == '/') {
        r.has_authority = true;
        s = s.substr(2);
        size_t end = s.find_first_of("/?");
        r.authority = std::string(s.substr(0, end == std::string_view::npos ? s.size() : end));
        s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
    }
    size_t q = s.find('?');
    if (q != std::string_view::npos) {
        r.has_query = true;
        r.query = std::string(s.substr(q + 1));
        s = s.substr(0, q);
    }
    r.path = std::string(s);
    return r;
}

bool is_unreserved(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_' ||
           c == '~';
}

void append_pct(std::string& out, unsigned char c) {
    static const char* hex = "0123456789ABCDEF";
    out.push_back('%');
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 15]);
}

}  // namespace

std::string Url::to_string() const {
    std::string out = scheme + "://";
    if (!userinfo.empty()) out += userinfo + "@";
    out += host;
    if (!port.empty()) out += ":" + port;
    out += path;
    if (has_query) out += "?" + query;
    if (has_fragment) out += "#" + fragment;
    return out;
}

std::string Url::origin() const {
    Url n = normalize(*this);
    std::string out = n.scheme + "://" + n.host;
    if (!n.port.empty()) out += ":" + n.port;
    return out;
}

std::optional<Url> parse_url(std::string_view input) {
    std::string s = trim(input);
    SplitRef r = split_reference(s);
    if (r.scheme.empty() || !r.has_authority) return std::nullopt;
    if (r.scheme != "http" && r.scheme != "https") return std::nullopt;
    Url u;
    u.scheme = r.scheme;
    if (!parse_authority(r.authority, u)) return std::nullopt;
    u.path = r.path;
    u.has_query = r.has_query;
    u.query = r.query;
    u.has_fragment = r.has_fragment;
    u.fragment = r.fragment;
    return u;
}

std::optional<Url> resolve_reference(const Url& base, std::string_view ref) {
    SplitRef r = split_reference(trim(ref));
    Url t;
    if (!r.scheme.empty()) {
        if (r.scheme != "http" && r.scheme != "https") return std::nullopt;
        if (!r.has_authority) return std::nullopt;
        t.scheme = r.scheme;
        if (!parse_authority(r.authority, t)) return std::nullopt;
        t.path = remove_dot_segments(r.path);
    } else {
        t.scheme = base.scheme;
        if (r.has_authority) {
            if (!parse_authority(r.authority, t)) return std::nullopt;
            t.path = remove_dot_segments(r.path);
        } else {
            t.userinfo = base.userinfo;
            t.host = base.host;
            t.port = base.port;
            if (r.path.empty()) {
                t.path = base.path;
                if (!r.has_query) {
                    r.has_query = base.has_query;
                    r.query = base.query;
                }
            } else if (r.path.front() == '/') {
                t.path = remove_dot_segments(r.path);
            } else {
                t.path = remove_dot_segments(merge_paths(base, r.path));
            }
        }
    }
    t.has_query = r.has_query;
    t.query = r.query;
    t.has_fragment = r.has_fragment;
    t.fragment = r.fragment;
    return t;
}

Url normalize(const Url& u) {
    Url n = u;
    n.scheme = to_lower(n.scheme);
    n.host = to_lower(n.host);
    while (!n.host.empty() && n.host.back() == '.') n.host.pop_back();
    if ((n.scheme == "http" && n.port == "80") || (n.scheme == "https" && n.port == "443"))
        n.port.clear();
    n.path = remove_dot_segments(n.path);
    if (n.path.empty()) n.path = "/";
    n.has_fragment = false;
    n.fragment.clear();
    return n;
}

std::string canonical_url(const Url& u) {
    Url n = normalize(u);
    if (n.has_query && !n.query.empty()) {
        std::vector<std::string> params = split(n.query, '&');
        std::stable_sort(params.begin(), params.end(),
                         [](const std::string& a, const std::string& b) {
                             return a.substr(0, a.find('=')) < b.substr(0, b.find('='));
                         });
        std::string q;
        for (size_t i = 0; i < params.size(); ++i) {
            if (i) q += "&";
            q += params[i];
        }
        n.query = q;
    }
    return n.to_string();
}

std::optional<std::string> canonical_url(std::string_view raw) {
    auto u = parse_url(raw);
    if (!u) return std::nullopt;
    return canonical_url(*u);
}

std::string form_urlencode(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ')
            out.push_back('+');
        else if (is_unreserved(c))
            out.push_back(c);
        else
            append_pct(out, static_cast<unsigned char>(c));
    }
    return out;
}

std::string percent_encode_path(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (is_unreserved(c) || c == '/')
            out.push_back(c);
        else
            append_pct(out, static_cast<unsigned char>(c));
    }
    return out;
}

}  // namespace adtrace::util
