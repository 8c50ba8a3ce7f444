#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "html/parser.hpp"
#include "induce/selector.hpp"
#include "util/timeutil.hpp"

namespace adtrace::induce {

class InductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sample page annotated with the exact values the scraper should output.
struct TrainingExample {
    html::ParsedPage page;
    std::map<std::string, std::string> expected;
};

struct SelectorRuleSet {
    std::string domain;
    util::UnixMillis trained_at = 0;
    std::map<std::string, SelectorRule> rules;
    std::vector<std::string> diagnostics;  // omitted fields and why

    std::string to_json() const;
    static SelectorRuleSet from_json(const std::string& text);
};

/// One node holding a wanted value, plus how to read the value off it.
struct ValueLocator {
    const html::Node* node;
    ValueSource source;
};

// All nodes whose whitespace-normalized direct text or attribute value
// equals the normalized target, in document order.
std::vector<ValueLocator> find_value_nodes(const html::Node& root, const std::string& value);

struct ApplyResult {
    std::map<std::string, std::string> values;
    std::map<std::string, std::string> diagnostics;  // per-field failure notes
};

// Evaluates every rule; a field is emitted only when its path matches
// exactly one node.
ApplyResult apply_rules(const SelectorRuleSet& rules, const html::ParsedPage& page);

// Induces one rule per field from the examples. Candidate paths are the
// ancestor-chain suffixes of every value node, with each step relaxed in
// the order index, then id, then classes. A candidate survives when it
// matches exactly one node per training page and that node yields the
// expected value. Survivors are ranked by fewest total matches, most
// retained constraints, shortest path, then serialized form (a final
// deterministic tie-break). `candidate_budget` bounds the enumeration on
// pathologically deep documents.
SelectorRuleSet induce_rules(const std::vector<TrainingExample>& examples,
                             const std::string& domain = "",
                             util::UnixMillis trained_at = 0,
                             size_t candidate_budget = 500000);

}  // namespace adtrace::induce
