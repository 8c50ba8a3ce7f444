#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "util/url.hpp"

namespace adtrace::crawl {

class ScopeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Registrable domains a crawl is allowed to touch, fixed at start from the
/// seed URLs. Membership is by registrable domain of a URL's host, so
/// www.ebay.com is inside a scope built from ebay.com seeds.
class DomainScope {
public:
    static DomainScope from_seeds(const std::vector<std::string>& seed_urls);
    static DomainScope from_domains(std::set<std::string> domains);

    bool contains(const util::Url& url) const;
    bool contains_host(const std::string& host) const;
    const std::set<std::string>& domains() const { return domains_; }
    size_t size() const { return domains_.size(); }

private:
    std::set<std::string> domains_;
};

/// One politeness-gate decision, kept for auditing dispatch gaps.
struct DispatchRecord {
    std::string domain;
    int64_t at_ms;
};

struct FrontierCounters {
    size_t admitted = 0;
    size_t deduped = 0;
    size_t rejected_out_of_scope = 0;
    size_t rejected_invalid = 0;
};

/// Dedup-aware FIFO URL queue with per-domain politeness state. All methods
/// are linearizable; the politeness timestamp is updated atomically with
/// the dispatch decision.
class Frontier {
public:
    Frontier(DomainScope scope, int64_t default_min_delay_ms);

    // Admits URLs that are in scope and unseen (by canonical form), in
    // order. Returns how many were admitted.
    size_t enqueue(const std::vector<std::string>& urls);

    // Earliest-enqueued URL whose domain is ready at `now_ms`; marks the
    // domain's last dispatch time and logs the decision. The time base only
    // needs to be monotonic.
    std::optional<std::string> next_fetchable(int64_t now_ms);

    // Earliest instant at which any pending URL becomes dispatchable, if
    // queued work exists.
    std::optional<int64_t> next_ready_time(int64_t now_ms) const;

    // Raises the politeness delay for one domain (robots crawl-delay);
    // never lowers it below the configured default.
    void raise_min_delay(const std::string& domain, int64_t min_delay_ms);

    bool empty() const;
    size_t pending() const;
    FrontierCounters counters() const;
    std::vector<DispatchRecord> decision_log() const;
    const DomainScope& scope() const { return scope_; }

private:
    struct Entry {
        std::string fetch_url;  // normalized, original query order
        std::string domain;     // registrable
    };
    struct DomainState {
        std::optional<int64_t> last_dispatch_ms;
        int64_t min_delay_ms;
    };

    bool domain_ready(const DomainState& state, int64_t now_ms) const;

    mutable std::mutex mu_;
    DomainScope scope_;
    int64_t default_min_delay_ms_;
    std::deque<Entry> pending_;
    std::unordered_set<std::string> seen_;  // canonical URLs
    std::map<std::string, DomainState> per_domain_;
    FrontierCounters counters_;
    std::vector<DispatchRecord> decisions_;
};

// Registrable domains of all seed hosts. Throws ScopeError naming every
// seed whose host cannot be reduced to a registrable domain.
DomainScope scope_of(const std::vector<std::string>& seed_urls);

}  // namespace adtrace::crawl
