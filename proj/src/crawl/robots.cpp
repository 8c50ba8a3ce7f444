#include "crawl/robots.hpp"

#include <algorithm>
#include <sstream>

#include "util/strings.hpp"

namespace adtrace::crawl {

namespace {

// one directive per line: "field: value", '#' starts a comment
bool split_directive(const std::string& line, std::string& field, std::string& value) {
    std::string work = line;
    size_t hash = work.find('#');
    if (hash != std::string::npos) work.erase(hash);
    size_t colon = work.find(':');
    if (colon == std::string::npos) return false;
    field = util::to_lower(util::trim(work.substr(0, colon)));
    value = util::trim(work.substr(colon + 1));
    return !field.empty();
}

}  // namespace

bool robots_pattern_matches(const std::string& pattern, const std::string& path) {
    bool anchored = !pattern.empty() && pattern.back() == '$';
    std::string p = anchored ? pattern.substr(0, pattern.size() - 1) : pattern;

    // recursive wildcard match, iterative with backtracking
    size_t pi = 0, si = 0;
    size_t star_pi = std::string::npos, star_si = 0;
    while (si < path.size()) {
        if (pi < p.size() && (p[pi] == path[si])) {
            ++pi;
            ++si;
        } else if (pi < p.size() && p[pi] == '*') {
            star_pi = pi++;
            star_si = si;
        } else if (star_pi != std::string::npos) {
            pi = star_pi + 1;
            si = ++star_si;
        } else {
            return false;
        }
    }
    while (pi < p.size() && p[pi] == '*') ++pi;
    if (pi < p.size()) return false;
    // prefix match unless anchored
    return !anchored || si == path.size();
}

RobotsRules RobotsRules::parse(const std::string& body, const std::string& user_agent) {
    struct Group {
        std::vector<std::string> agents;
        std::vector<Rule> rules;
        std::optional<double> crawl_delay;
    };
    std::vector<Group> groups;
    bool last_was_agent = false;

    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string field, value;
        if (!split_directive(line, field, value)) continue;

        if (field == "user-agent") {
            if (!last_was_agent) groups.push_back({});
            groups.back().agents.push_back(util::to_lower(value));
            last_was_agent = true;
            continue;
        }
        last_was_agent = false;
        if (groups.empty()) continue;  // rules before any user-agent line
        Group& g = groups.back();
        if (field == "disallow" || field == "allow") {
            if (value.empty() && field == "disallow") continue;  // empty disallow allows all
            g.rules.push_back({value, field == "allow"});
        } else if (field == "crawl-delay") {
            try {
                g.crawl_delay = std::stod(value);
            } catch (...) {
            }
        }
    }

    // most specific agent match wins: longest matching token, '*' as fallback
    std::string ua = util::to_lower(user_agent);
    const Group* chosen = nullptr;
    size_t best_len = 0;
    bool have_specific = false;
    for (const auto& g : groups) {
        for (const auto& agent : g.agents) {
            if (agent == "*") {
                if (!have_specific && !chosen) chosen = &g;
            } else if (ua.find(agent) != std::string::npos && agent.size() >= best_len) {
                chosen = &g;
                best_len = agent.size();
                have_specific = true;
            }
        }
    }

    RobotsRules out;
    if (chosen) {
        out.rules_ = chosen->rules;
        out.crawl_delay_s_ = chosen->crawl_delay;
    }
    return out;
}

bool RobotsRules::allowed(const std::string& path_and_query) const {
    std::string path = path_and_query.empty() ? "/" : path_and_query;
    const Rule* winner = nullptr;
    size_t winner_len = 0;
    for (const auto& rule : rules_) {
        if (!robots_pattern_matches(rule.pattern, path)) continue;
        size_t len = rule.pattern.size();
        if (!winner || len > winner_len || (len == winner_len && rule.allow && !winner->allow)) {
            winner = &rule;
            winner_len = len;
        }
    }
    return !winner || winner->allow;
}

}  // namespace adtrace::crawl
