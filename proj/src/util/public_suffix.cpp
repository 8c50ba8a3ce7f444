#include "util/public_suffix.hpp"

#include <cctype>
#include <unordered_set>
#include <vector>

#include "util/strings.hpp"

namespace adtrace::util {

namespace {

// Snapshot of public-suffix rules beyond the implicit default rule "*"
// (any bare TLD is a suffix). Covers the country second-level registries
// seen on the large marketplaces plus the common multi-label suffixes.
// Wildcard rules are prefixed "*."; exception rules "!".
const char* const kRules[] = {
    // United Kingdom
    "co.uk", "org.uk", "me.uk", "net.uk", "ac.uk", "gov.uk", "ltd.uk", "plc.uk",
    // Japan
    "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp", "ad.jp", "gr.jp",
    // Australia / New Zealand
    "com.au", "net.au", "org.au", "edu.au", "gov.au", "id.au", "co.nz", "net.nz", "org.nz",
    "govt.nz", "ac.nz", "geek.nz",
    // Brazil / Latin America
    "com.br", "net.br", "org.br", "gov.br", "art.br", "blog.br", "eco.br", "com.ar", "net.ar",
    "org.ar", "com.mx", "org.mx", "net.mx", "gob.mx", "com.co", "net.co", "org.co", "com.pe",
    "org.pe", "com.ve", "com.ec", "com.uy", "com.bo", "com.py", "cl.lat",
    // Asia
    "com.cn", "net.cn", "org.cn", "gov.cn", "com.hk", "org.hk", "net.hk", "edu.hk", "com.tw",
    "org.tw", "net.tw", "com.sg", "org.sg", "net.sg", "edu.sg", "com.my", "net.my", "org.my",
    "co.kr", "or.kr", "ne.kr", "go.kr", "re.kr", "co.th", "in.th", "or.th", "ac.th", "com.ph",
    "net.ph", "org.ph", "com.vn", "net.vn", "org.vn", "co.in", "net.in", "org.in", "firm.in",
    "gen.in", "ind.in", "co.id", "or.id", "web.id", "com.pk", "org.pk", "com.bd", "com.lk",
    "com.np", "com.kh", "com.mm",
    // Middle East / Africa
    "co.il", "org.il", "net.il", "ac.il", "com.tr", "net.tr", "org.tr", "gen.tr", "co.za",
    "org.za", "net.za", "web.za", "com.eg", "com.sa", "com.ae", "org.ae", "com.qa", "com.kw",
    "com.lb", "com.jo", "co.ke", "or.ke", "com.ng", "org.ng", "co.tz", "co.ug", "com.gh",
    "co.zw", "com.na", "co.bw", "co.mz", "com.et", "co.ma", "com.tn", "com.dz",
    // Europe (multi-label registries)
    "com.pl", "net.pl", "org.pl", "waw.pl", "com.pt", "org.pt", "edu.pt", "com.gr", "org.gr",
    "net.gr", "com.ro", "org.ro", "com.ru", "org.ru", "net.ru", "msk.ru", "spb.ru", "com.ua",
    "net.ua", "org.ua", "kiev.ua", "co.at", "or.at", "ac.at", "com.es", "org.es", "nom.es",
    "gob.es", "com.mt", "com.cy", "com.ee", "co.hu", "com.lv", "com.is", "co.no", "priv.no",
    "com.se", "com.de",
    // North America extras
    "co.ca", "com.gt", "com.sv", "com.hn", "com.ni", "com.pa", "com.do", "com.pr", "com.jm",
    "com.bs", "com.bb", "com.tt",
    // Wildcard registries (every label under them is a suffix)
    "*.ck", "*.bn", "*.fk",
    "!www.ck",
    // Common private/hosting suffixes that behave like registries
    "github.io", "gitlab.io", "blogspot.com", "appspot.com", "herokuapp.com", "cloudfront.net",
    "amazonaws.com", "azurewebsites.net", "netlify.app", "web.app", "firebaseapp.com",
};

struct RuleSet {
    std::unordered_set<std::string> normal;
    std::unordered_set<std::string> wildcard;   // stored without the "*." prefix
    std::unordered_set<std::string> exception;  // stored without the "!" prefix
};

const RuleSet& rules() {
    static const RuleSet rs = [] {
        RuleSet r;
        for (const char* rule : kRules) {
            std::string s(rule);
            if (s.rfind("!", 0) == 0)
                r.exception.insert(s.substr(1));
            else if (s.rfind("*.", 0) == 0)
                r.wildcard.insert(s.substr(2));
            else
                r.normal.insert(s);
        }
        return r;
    }();
    return rs;
}

bool is_ip_literal(const std::string& host) {
    if (host.empty()) return false;
    if (host.front() == '[') return true;  // IPv6
    bool all_num = true;
    for (char c : host) {
        if (c != '.' && !std::isdigit(static_cast<unsigned char>(c))) {
            all_num = false;
            break;
        }
    }
    return all_num;
}

std::string join_from(const std::vector<std::string>& labels, size_t start) {
    std::string out;
    for (size_t i = start; i < labels.size(); ++i) {
        if (i > start) out += ".";
        out += labels[i];
    }
    return out;
}

}  // namespace

std::optional<std::string> public_suffix(std::string_view host_in) {
    std::string host = to_lower(trim(host_in));
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty()) return std::nullopt;
    if (is_ip_literal(host)) return std::nullopt;

    std::vector<std::string> labels = split(host, '.');
    for (const auto& l : labels)
        if (l.empty()) return std::nullopt;

    const RuleSet& rs = rules();

    // Exception rules win outright; the suffix is the rule minus its first label.
    for (size_t i = 0; i < labels.size(); ++i) {
        if (rs.exception.count(join_from(labels, i))) return join_from(labels, i + 1);
    }
    // Longest match among normal + wildcard rules, scanning from the left.
    for (size_t i = 0; i < labels.size(); ++i) {
        std::string cand = join_from(labels, i);
        if (rs.normal.count(cand)) return cand;
        if (i + 1 < labels.size() && rs.wildcard.count(join_from(labels, i + 1))) return cand;
    }
    // Default rule "*": the rightmost label is the suffix.
    return labels.back();
}

std::optional<std::string> registrable_domain(std::string_view host_in) {
    std::string host = to_lower(trim(host_in));
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty()) return std::nullopt;
    if (is_ip_literal(host)) return host;

    auto suffix = public_suffix(host);
    if (!suffix) return std::nullopt;
    if (host == *suffix) return std::nullopt;
    if (host.size() <= suffix->size() + 1) return std::nullopt;

    // One label beyond the suffix.
    std::string prefix = host.substr(0, host.size() - suffix->size() - 1);
    size_t last_dot = prefix.find_last_of('.');
    std::string label = last_dot == std::string::npos ? prefix : prefix.substr(last_dot + 1);
    if (label.empty()) return std::nullopt;
    return label + "." + *suffix;
}

}  // namespace adtrace::util
