#include "crawl/frontier.hpp"

#include <algorithm>

#include "util/public_suffix.hpp"

namespace adtrace::crawl {

DomainScope DomainScope::from_seeds(const std::vector<std::string>& seed_urls) {
    std::set<std::string> domains;
    std::vector<std::string> bad;
    for (const auto& seed : seed_urls) {
        auto url = util::parse_url(seed);
        std::optional<std::string> domain;
        if (url) domain = util::registrable_domain(url->host);
        if (!domain) {
            bad.push_back(seed);
            continue;
        }
        domains.insert(*domain);
    }
    if (!bad.empty()) {
        std::string msg = "seeds with unusable hosts:";
        for (const auto& s : bad) msg += " " + s;
        throw ScopeError(msg);
    }
    return from_domains(std::move(domains));
}

DomainScope DomainScope::from_domains(std::set<std::string> domains) {
    DomainScope scope;
    scope.domains_ = std::move(domains);
    return scope;
}

bool DomainScope::contains(const util::Url& url) const {
    return contains_host(url.host);
}

bool DomainScope::contains_host(const std::string& host) const {
    auto domain = util::registrable_domain(host);
    return domain && domains_.count(*domain) > 0;
}

DomainScope scope_of(const std::vector<std::string>& seed_urls) {
    if (seed_urls.empty()) throw ScopeError("scope_of: no seeds");
    return DomainScope::from_seeds(seed_urls);
}

Frontier::Frontier(DomainScope scope, int64_t default_min_delay_ms)
    : scope_(std::move(scope)), default_min_delay_ms_(default_min_delay_ms) {}

size_t Frontier::enqueue(const std::vector<std::string>& urls) {
    std::lock_guard<std::mutex> lock(mu_);
    size_t admitted = 0;
    for (const auto& raw : urls) {
        auto url = util::parse_url(raw);
        if (!url) {
            ++counters_.rejected_invalid;
            continue;
        }
        auto domain = util::registrable_domain(url->host);
        if (!domain || !scope_.domains().count(*domain)) {
            ++counters_.rejected_out_of_scope;
            continue;
        }
        std::string canonical = util::canonical_url(*url);
        if (!seen_.insert(canonical).second) {
            ++counters_.deduped;
            continue;
        }
        pending_.push_back({util::normalize(*url).to_string(), *domain});
        ++counters_.admitted;
        ++admitted;
    }
    return admitted;
}

bool Frontier::domain_ready(const DomainState& state, int64_t now_ms) const {
    return !state.last_dispatch_ms ||
           now_ms - *state.last_dispatch_ms >= state.min_delay_ms;
}

std::optional<std::string> Frontier::next_fetchable(int64_t now_ms) {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto it = pending_.begin(); it != pending_.end(); ++it) {
        auto state_it = per_domain_.find(it->domain);
        if (state_it == per_domain_.end()) {
            state_it =
                per_domain_.emplace(it->domain, DomainState{std::nullopt, default_min_delay_ms_})
                    .first;
        }
        if (!domain_ready(state_it->second, now_ms)) continue;
        state_it->second.last_dispatch_ms = now_ms;
        decisions_.push_back({it->domain, now_ms});
        std::string url = std::move(it->fetch_url);
        pending_.erase(it);
        return url;
    }
    return std::nullopt;
}

std::optional<int64_t> Frontier::next_ready_time(int64_t now_ms) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::optional<int64_t> earliest;
    for (const auto& entry : pending_) {
        auto state_it = per_domain_.find(entry.domain);
        int64_t ready = now_ms;
        if (state_it != per_domain_.end() && state_it->second.last_dispatch_ms) {
            ready = *state_it->second.last_dispatch_ms + state_it->second.min_delay_ms;
        }
        if (!earliest || ready < *earliest) earliest = ready;
        if (*earliest <= now_ms) break;  // cannot get earlier
    }
    return earliest;
}

void Frontier::raise_min_delay(const std::string& domain, int64_t min_delay_ms) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = per_domain_.find(domain);
    if (it == per_domain_.end()) {
        per_domain_.emplace(domain,
                            DomainState{std::nullopt, std::max(default_min_delay_ms_, min_delay_ms)});
    } else {
        it->second.min_delay_ms = std::max(it->second.min_delay_ms, min_delay_ms);
    }
}

bool Frontier::empty() const {
    std::lock_guard<std::mutex> lock(mu_);
    return pending_.empty();
}

size_t Frontier::pending() const {
    std::lock_guard<std::mutex> lock(mu_);
    return pending_.size();
}

FrontierCounters Frontier::counters() const {
    std::lock_guard<std::mutex> lock(mu_);
    return counters_;
}

std::vector<DispatchRecord> Frontier::decision_log() const {
    std::lock_guard<std::mutex> lock(mu_);
    return decisions_;
}

}  // namespace adtrace::crawl
