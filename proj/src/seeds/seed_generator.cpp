#include "seeds/seed_generator.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "util/strings.hpp"
#include "util/url.hpp"

namespace adtrace::seeds {

namespace {

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

size_t count_placeholder(const std::string& s) {
    size_t n = 0, pos = 0;
    while ((pos = s.find(kKeywordPlaceholder, pos)) != std::string::npos) {
        ++n;
        pos += 7;
    }
    return n;
}

std::string substitute(const std::string& tmpl, const std::string& encoded_keyword) {
    std::string out = tmpl;
    size_t pos = out.find(kKeywordPlaceholder);
    out.replace(pos, 7, encoded_keyword);
    return out;
}

}  // namespace

std::vector<SitePattern> parse_patterns(const std::string& content, const std::string& origin) {
    std::vector<SitePattern> patterns;
    std::set<std::pair<std::string, std::string>> seen;
    std::istringstream in(content);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = util::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": expected domain<TAB>template");
        SitePattern p;
        p.domain = util::to_lower(util::trim(line.substr(0, tab)));
        p.template_url = util::trim(line.substr(tab + 1));
        if (p.domain.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) + ": empty domain");
        size_t placeholders = count_placeholder(p.template_url);
        if (placeholders == 0)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": template is missing the KEYWORD placeholder");
        if (placeholders > 1)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": template contains KEYWORD more than once");
        std::string probe = substitute(p.template_url, "probe");
        auto url = util::parse_url(probe);
        if (!url)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": template does not form an absolute http(s) URL");
        if (!seen.insert({p.domain, p.template_url}).second)
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": duplicate (domain, template) pair");
        patterns.push_back(std::move(p));
    }
    return patterns;
}

std::vector<SitePattern> load_patterns(const std::string& path) {
    return parse_patterns(read_file_or_throw(path), path);
}

std::vector<SpeciesEntry> parse_species(const std::string& content, const std::string& origin) {
    std::vector<SpeciesEntry> entries;
    std::istringstream in(content);
    std::string line;
    size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (util::trim(line).empty()) continue;
        std::vector<std::string> fields = util::split_csv_line(line);
        if (!header_seen) {
            header_seen = true;
            if (fields.size() < 2 || util::trim(util::to_lower(fields[0])) != "scientific_name" ||
                util::trim(util::to_lower(fields[1])) != "english_names")
                throw ParseError(origin + ":" + std::to_string(lineno) +
                                 ": expected header scientific_name,english_names");
            continue;
        }
        SpeciesEntry e;
        e.scientific_name = util::trim(fields[0]);
        if (e.scientific_name.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) + ": empty scientific_name");
        if (fields.size() > 1) {
            for (const auto& name : util::split(fields[1], ';')) {
                std::string t = util::trim(name);
                if (!t.empty()) e.english_names.push_back(t);
            }
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<SpeciesEntry> load_species(const std::string& path) {
    return parse_species(read_file_or_throw(path), path);
}

std::vector<std::string> expand_keywords(const std::vector<SpeciesEntry>& species) {
    std::vector<std::string> keywords;
    std::unordered_set<std::string> seen;
    auto add = [&](const std::string& kw) {
        std::string key = util::to_lower(kw);
        if (seen.insert(key).second) keywords.push_back(kw);
    };
    for (const auto& entry : species) {
        add(entry.scientific_name);
        for (const auto& name : entry.english_names) add(name);
    }
    return keywords;
}

SeedSet generate_seeds(const std::vector<SitePattern>& patterns,
                       const std::vector<std::string>& keywords) {
    SeedSet out;
    std::unordered_set<std::string> seen_urls;
    for (const auto& pattern : patterns) {
        for (const auto& keyword : keywords) {
            std::string encoded = util::form_urlencode(util::collapse_ws(keyword));
            if (encoded.empty()) {
                ++out.skipped_empty_keywords;
                continue;
            }
            std::string url = substitute(pattern.template_url, encoded);
            if (!seen_urls.insert(url).second) {
                ++out.deduped;
                continue;
            }
            out.seeds.push_back({url, pattern.domain, keyword});
        }
    }
    return out;
}

void write_seed_file(const SeedSet& seeds, const std::string& path) {
    std::ofstream outf(path, std::ios::binary | std::ios::trunc);
    if (!outf) throw ParseError(path + ": cannot open for writing");
    for (const auto& seed : seeds.seeds) outf << seed.url << "\n";
    if (!outf.good()) throw ParseError(path + ": write failed");
}

std::vector<std::string> read_seed_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<std::string> urls;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = util::trim(line);
        if (!t.empty() && t[0] != '#') urls.push_back(t);
    }
    return urls;
}

}  // namespace adtrace::seeds
