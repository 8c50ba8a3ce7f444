#include "induce/induction.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "util/strings.hpp"

namespace adtrace::induce {

namespace {

using nlohmann::json;

struct Candidate {
    SelectorPath path;
    ValueSource source;

    std::string key() const { return path.to_string() + " | " + source.to_string(); }
};

PathStep full_step(const html::Node& node) {
    PathStep step;
    step.tag = node.tag;
    step.index = node.element_index();
    std::string id = node.id();
    if (!id.empty()) step.id = id;
    std::vector<std::string> classes = node.classes();
    if (!classes.empty()) step.classes = classes;
    return step;
}

// Relaxation states for one step, most constrained first: full, index
// dropped, index+id dropped, tag only. Equal states collapse.
std::vector<PathStep> step_states(const html::Node& node) {
    PathStep full = full_step(node);
    std::vector<PathStep> states;
    auto push_unique = [&](PathStep s) {
        for (const auto& existing : states) {
            if (existing.index == s.index && existing.id == s.id && existing.classes == s.classes)
                return;
        }
        states.push_back(std::move(s));
    };
    push_unique(full);
    PathStep s1 = full;
    s1.index.reset();
    push_unique(s1);
    PathStep s2 = s1;
    s2.id.reset();
    push_unique(s2);
    PathStep s3 = s2;
    s3.classes.reset();
    push_unique(s3);
    return states;
}

void enumerate_for_locator(const ValueLocator& locator, size_t budget,
                           std::map<std::string, Candidate>& out) {
    std::vector<const html::Node*> chain = html::ancestor_chain(*locator.node);
    if (chain.empty()) return;
    std::vector<std::vector<PathStep>> states;
    states.reserve(chain.size());
    for (const html::Node* n : chain) states.push_back(step_states(*n));

    for (size_t k = 1; k <= chain.size(); ++k) {
        size_t first = chain.size() - k;
        // product of state counts for this suffix, clipped by the budget
        size_t combos = 1;
        bool over = false;
        for (size_t i = first; i < chain.size(); ++i) {
            combos *= states[i].size();
            if (combos > budget) {
                over = true;
                break;
            }
        }
        if (over) break;  // deeper suffixes only grow the product

        std::vector<size_t> pick(k, 0);
        bool done = false;
        while (!done) {
            Candidate cand;
            cand.source = locator.source;
            cand.path.steps.reserve(k);
            for (size_t i = 0; i < k; ++i) cand.path.steps.push_back(states[first + i][pick[i]]);
            out.emplace(cand.key(), std::move(cand));

            // odometer increment over the per-step states
            size_t pos = k;
            while (true) {
                if (pos == 0) {
                    done = true;
                    break;
                }
                --pos;
                if (++pick[pos] < states[first + pos].size()) break;
                pick[pos] = 0;
            }
        }
    }
}

json step_to_json(const PathStep& step) {
    json j;
    j["tag"] = step.tag;
    if (step.classes) j["classes"] = *step.classes;
    if (step.id) j["id"] = *step.id;
    if (step.index) j["index"] = *step.index;
    return j;
}

PathStep step_from_json(const json& j) {
    PathStep step;
    step.tag = j.at("tag").get<std::string>();
    if (j.contains("classes")) {
        step.classes = j["classes"].get<std::vector<std::string>>();
        std::sort(step.classes->begin(), step.classes->end());
    }
    if (j.contains("id")) step.id = j["id"].get<std::string>();
    if (j.contains("index")) step.index = j["index"].get<int>();
    return step;
}

}  // namespace

std::vector<ValueLocator> find_value_nodes(const html::Node& root, const std::string& value) {
    std::string target = util::collapse_ws(value);
    if (target.empty()) throw InductionError("find_value_nodes: empty target value");
    std::vector<ValueLocator> out;
    html::for_each_element(root, [&](const html::Node& n) {
        if (n.own_text() == target)
            out.push_back({&n, ValueSource{ValueSource::Kind::TextContent, ""}});
        for (const auto& [name, attr_value] : n.attrs) {
            if (util::collapse_ws(attr_value) == target)
                out.push_back({&n, ValueSource{ValueSource::Kind::Attribute, name}});
        }
    });
    return out;
}

ApplyResult apply_rules(const SelectorRuleSet& rules, const html::ParsedPage& page) {
    ApplyResult out;
    for (const auto& [field, rule] : rules.rules) {
        std::vector<const html::Node*> matches = find_matches(rule.path, *page.root);
        if (matches.size() == 1) {
            std::string value = rule.value_source.read(*matches.front());
            if (!value.empty()) out.values[field] = value;
            else out.diagnostics[field] = "matched node has empty value";
        } else if (matches.empty()) {
            out.diagnostics[field] = "no match";
        } else {
            out.diagnostics[field] =
                "ambiguous match (" + std::to_string(matches.size()) + ")";
        }
    }
    return out;
}

SelectorRuleSet induce_rules(const std::vector<TrainingExample>& examples,
                             const std::string& domain, util::UnixMillis trained_at,
                             size_t candidate_budget) {
    if (examples.empty()) throw InductionError("induce_rules: no training examples");

    SelectorRuleSet out;
    out.domain = domain;
    out.trained_at = trained_at;

    // union of annotated fields across examples
    std::set<std::string> fields;
    for (const auto& ex : examples) {
        for (const auto& [field, value] : ex.expected) {
            if (util::collapse_ws(value).empty())
                throw InductionError("induce_rules: empty expected value for field " + field);
            fields.insert(field);
        }
    }

    for (const std::string& field : fields) {
        // examples that annotate this field constrain the rule
        std::vector<const TrainingExample*> defining;
        for (const auto& ex : examples) {
            if (ex.expected.count(field)) defining.push_back(&ex);
        }

        std::map<std::string, Candidate> candidates;
        bool missing_value = false;
        for (const TrainingExample* ex : defining) {
            auto locators = find_value_nodes(*ex->page.root, ex->expected.at(field));
            if (locators.empty()) {
                out.diagnostics.push_back(field + ": expected value not found on page " +
                                          ex->page.url);
                missing_value = true;
                break;
            }
            for (const auto& loc : locators)
                enumerate_for_locator(loc, candidate_budget, candidates);
        }
        if (missing_value) continue;

        // validity: exactly one match per defining page, yielding the value
        struct Scored {
            size_t total_matches;
            int constraints;
            size_t path_len;
            std::string key;
            const Candidate* cand;
        };
        std::optional<Scored> best;
        for (const auto& [key, cand] : candidates) {
            size_t total_matches = 0;
            bool valid = true;
            for (const TrainingExample* ex : defining) {
                auto matches = find_matches(cand.path, *ex->page.root);
                total_matches += matches.size();
                if (matches.size() != 1 ||
                    cand.source.read(*matches.front()) !=
                        util::collapse_ws(ex->expected.at(field))) {
                    valid = false;
                    break;
                }
            }
            if (!valid) continue;
            Scored s{total_matches, cand.path.constraint_count(), cand.path.steps.size(), key,
                     &cand};
            auto better = [](const Scored& a, const Scored& b) {
                return std::make_tuple(a.total_matches, -a.constraints, a.path_len, a.key) <
                       std::make_tuple(b.total_matches, -b.constraints, b.path_len, b.key);
            };
            if (!best || better(s, *best)) best = s;
        }

        if (!best) {
            out.diagnostics.push_back(field + ": no candidate path survives all examples");
            continue;
        }
        out.rules[field] = SelectorRule{field, best->cand->path, best->cand->source};
    }

    return out;
}

std::string SelectorRuleSet::to_json() const {
    json j;
    j["domain"] = domain;
    j["trained_at"] = util::to_iso8601_ms(trained_at);
    json rules_json = json::object();
    for (const auto& [field, rule] : rules) {
        json r;
        json steps = json::array();
        for (const auto& step : rule.path.steps) steps.push_back(step_to_json(step));
        r["path"] = steps;
        r["value_source"] = rule.value_source.to_string();
        rules_json[field] = r;
    }
    j["rules"] = rules_json;
    return j.dump(2);
}

SelectorRuleSet SelectorRuleSet::from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InductionError("rule set: malformed JSON");
    SelectorRuleSet out;
    out.domain = j.value("domain", "");
    if (j.contains("trained_at")) {
        auto ms = util::parse_iso8601(j["trained_at"].get<std::string>());
        if (ms) out.trained_at = *ms;
    }
    if (!j.contains("rules") || !j["rules"].is_object())
        throw InductionError("rule set: missing rules object");
    for (const auto& [field, r] : j["rules"].items()) {
        SelectorRule rule;
        rule.field_name = field;
        for (const auto& step : r.at("path")) rule.path.steps.push_back(step_from_json(step));
        auto source = ValueSource::from_string(r.at("value_source").get<std::string>());
        if (!source) throw InductionError("rule set: bad value_source for field " + field);
        rule.value_source = *source;
        out.rules[field] = std::move(rule);
    }
    return out;
}

}  // namespace adtrace::induce
