#pragma once

#include <optional>
#include <string>
#include <vector>

namespace adtrace::crawl {

/// Parsed robots.txt group for one user agent: allow/disallow path rules
/// with '*' wildcards and '$' end anchors, plus an optional crawl-delay.
/// Rule precedence follows the longest-pattern-wins convention, allow
/// winning exact ties.
class RobotsRules {
public:
    static RobotsRules parse(const std::string& body, const std::string& user_agent);

    bool allowed(const std::string& path_and_query) const;
    std::optional<double> crawl_delay_seconds() const { return crawl_delay_s_; }
    size_t rule_count() const { return rules_.size(); }

private:
    struct Rule {
        std::string pattern;
        bool allow;
    };
    std::vector<Rule> rules_;
    std::optional<double> crawl_delay_s_;
};

// '*' matches any run of characters, '$' at pattern end anchors the match.
bool robots_pattern_matches(const std::string& pattern, const std::string& path);

}  // namespace adtrace::crawl
