#include "support/induction_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

namespace testsupport {

namespace {

using adtrace::html::Node;
using adtrace::html::NodeType;

// --- independent re-implementations of the matching primitives ---

std::string squash(const std::string& s) {
    std::string out;
    bool ws = true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!ws) out.push_back(' ');
            ws = true;
        } else {
            out.push_back(c);
            ws = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::string direct_text(const Node& n) {
    std::string raw;
    for (const auto& c : n.children)
        if (c->type == NodeType::Text) raw += c->text;
    return squash(raw);
}

std::vector<std::string> class_set(const Node& n) {
    std::vector<std::string> out;
    for (const auto& [k, v] : n.attrs) {
        if (k != "class") continue;
        std::string cur;
        for (char c : v + std::string(" ")) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string id_of(const Node& n) {
    for (const auto& [k, v] : n.attrs)
        if (k == "id") return squash(v);
    return "";
}

int sibling_element_index(const Node& n) {
    if (!n.parent) return 0;
    int idx = 0;
    for (const auto& sib : n.parent->children) {
        if (sib.get() == &n) return idx;
        if (sib->type == NodeType::Element) ++idx;
    }
    return idx;
}

void all_elements(const Node& root, std::vector<const Node*>& out) {
    for (const auto& c : root.children) {
        if (c->type == NodeType::Element) {
            out.push_back(c.get());
            all_elements(*c, out);
        }
    }
}

struct Step {
    std::string tag;
    std::optional<std::vector<std::string>> classes;
    std::optional<std::string> id;
    std::optional<int> index;

    bool matches(const Node& n) const {
        if (n.type != NodeType::Element || n.tag != tag) return false;
        if (index && sibling_element_index(n) != *index) return false;
        if (id && id_of(n) != *id) return false;
        if (classes) {
            std::vector<std::string> have = class_set(n);
            for (const auto& c : *classes)
                if (!std::binary_search(have.begin(), have.end(), c)) return false;
        }
        return true;
    }

    int constraints() const { return (classes ? 1 : 0) + (id ? 1 : 0) + (index ? 1 : 0); }
};

struct Source {
    bool text = true;
    std::string attr;

    std::string repr() const { return text ? "text-content" : "attribute(" + attr + ")"; }
    std::string read(const Node& n) const {
        if (text) return direct_text(n);
        for (const auto& [k, v] : n.attrs)
            if (k == attr) return squash(v);
        return "";
    }
};

struct Candidate {
    std::vector<Step> steps;
    Source source;

    std::string path_repr() const {
        std::string out;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (i) out += " > ";
            out += steps[i].tag;
            if (steps[i].id) out += "#" + *steps[i].id;
            if (steps[i].classes)
                for (const auto& c : *steps[i].classes) out += "." + c;
            if (steps[i].index) out += ":" + std::to_string(*steps[i].index);
        }
        return out;
    }
    std::string key() const { return path_repr() + " | " + source.repr(); }
    int constraints() const {
        int t = 0;
        for (const auto& s : steps) t += s.constraints();
        return t;
    }

    bool matches_at(const Node& n) const {
        const Node* cur = &n;
        for (size_t i = steps.size(); i-- > 0;) {
            if (!cur || cur->type != NodeType::Element || !steps[i].matches(*cur)) return false;
            cur = cur->parent;
        }
        return true;
    }

    std::vector<const Node*> match_all(const Node& root) const {
        std::vector<const Node*> elems;
        all_elements(root, elems);
        std::vector<const Node*> out;
        for (const Node* e : elems)
            if (matches_at(*e)) out.push_back(e);
        return out;
    }
};

// four relaxation states per step, in the documented order
std::vector<Step> states_for(const Node& n) {
    Step full;
    full.tag = n.tag;
    full.index = sibling_element_index(n);
    std::string id = id_of(n);
    if (!id.empty()) full.id = id;
    std::vector<std::string> classes = class_set(n);
    if (!classes.empty()) full.classes = classes;

    std::vector<Step> states;
    auto add = [&](const Step& s) {
        for (const auto& e : states)
            if (e.index == s.index && e.id == s.id && e.classes == s.classes) return;
        states.push_back(s);
    };
    add(full);
    Step s = full;
    s.index.reset();
    add(s);
    s.id.reset();
    add(s);
    s.classes.reset();
    add(s);
    return states;
}

void enumerate_chain(const std::vector<const Node*>& chain, const Source& source,
                     std::map<std::string, Candidate>& out) {
    size_t n = chain.size();
    std::vector<std::vector<Step>> per_step;
    for (const Node* node : chain) per_step.push_back(states_for(*node));

    for (size_t k = 1; k <= n; ++k) {
        size_t first = n - k;
        std::vector<size_t> pick(k, 0);
        bool done = false;
        while (!done) {
            Candidate c;
            c.source = source;
            for (size_t i = 0; i < k; ++i) c.steps.push_back(per_step[first + i][pick[i]]);
            out.emplace(c.key(), c);
            size_t pos = k;
            while (true) {
                if (pos == 0) {
                    done = true;
                    break;
                }
                --pos;
                if (++pick[pos] < per_step[first + pos].size()) break;
                pick[pos] = 0;
            }
        }
    }
}

}  // namespace

std::optional<OracleRule> oracle_best_rule(
    const std::vector<const Node*>& page_roots,
    const std::vector<std::map<std::string, std::string>>& expected_per_page,
    const std::string& field) {
    // pages that define the field
    std::vector<size_t> defining;
    for (size_t i = 0; i < page_roots.size(); ++i)
        if (expected_per_page[i].count(field)) defining.push_back(i);
    if (defining.empty()) return std::nullopt;

    // gather candidates from every defining page's value nodes
    std::map<std::string, Candidate> candidates;
    for (size_t i : defining) {
        std::string target = squash(expected_per_page[i].at(field));
        std::vector<const Node*> elems;
        all_elements(*page_roots[i], elems);
        bool found = false;
        for (const Node* e : elems) {
            std::vector<const Node*> chain;
            const Node* cur = e;
            while (cur && cur->type == NodeType::Element) {
                chain.push_back(cur);
                cur = cur->parent;
            }
            std::reverse(chain.begin(), chain.end());
            if (direct_text(*e) == target) {
                enumerate_chain(chain, Source{true, ""}, candidates);
                found = true;
            }
            for (const auto& [k, v] : e->attrs) {
                if (squash(v) == target) {
                    enumerate_chain(chain, Source{false, k}, candidates);
                    found = true;
                }
            }
        }
        if (!found) return std::nullopt;  // value absent from a defining page
    }

    using Score = std::tuple<size_t, int, size_t, std::string>;
    std::optional<Score> best_score;
    const Candidate* best = nullptr;
    for (const auto& [key, cand] : candidates) {
        size_t total = 0;
        bool valid = true;
        for (size_t i : defining) {
            auto matches = cand.match_all(*page_roots[i]);
            total += matches.size();
            if (matches.size() != 1 ||
                cand.source.read(*matches[0]) != squash(expected_per_page[i].at(field))) {
                valid = false;
                break;
            }
        }
        if (!valid) continue;
        Score score{total, -cand.constraints(), cand.steps.size(), key};
        if (!best_score || score < *best_score) {
            best_score = score;
            best = &cand;
        }
    }
    if (!best) return std::nullopt;
    return OracleRule{best->path_repr(), best->source.repr()};
}

}  // namespace testsupport
