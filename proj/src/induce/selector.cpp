#include "induce/selector.hpp"

#include <algorithm>

#include "util/strings.hpp"

namespace adtrace::induce {

bool PathStep::matches(const html::Node& node) const {
    if (node.type != html::NodeType::Element || node.tag != tag) return false;
    if (index && node.element_index() != *index) return false;
    if (id && node.id() != *id) return false;
    if (classes) {
        std::vector<std::string> have = node.classes();  // sorted
        for (const auto& cls : *classes) {
            if (!std::binary_search(have.begin(), have.end(), cls)) return false;
        }
    }
    return true;
}

int PathStep::constraint_count() const {
    return (classes ? 1 : 0) + (id ? 1 : 0) + (index ? 1 : 0);
}

std::string ValueSource::read(const html::Node& node) const {
    if (kind == Kind::TextContent) return node.own_text();
    const std::string* v = node.attr(attribute);
    return v ? util::collapse_ws(*v) : std::string();
}

std::string ValueSource::to_string() const {
    return kind == Kind::TextContent ? "text-content" : "attribute(" + attribute + ")";
}

std::optional<ValueSource> ValueSource::from_string(const std::string& s) {
    if (s == "text-content") return ValueSource{Kind::TextContent, ""};
    if (s.rfind("attribute(", 0) == 0 && s.back() == ')')
        return ValueSource{Kind::Attribute, s.substr(10, s.size() - 11)};
    return std::nullopt;
}

bool SelectorPath::matches(const html::Node& node) const {
    if (steps.empty()) return false;
    const html::Node* cur = &node;
    for (size_t i = steps.size(); i-- > 0;) {
        if (!cur || cur->type != html::NodeType::Element || !steps[i].matches(*cur)) return false;
        cur = cur->parent;
    }
    return true;
}

int SelectorPath::constraint_count() const {
    int total = 0;
    for (const auto& step : steps) total += step.constraint_count();
    return total;
}

std::string SelectorPath::to_string() const {
    std::string out;
    for (size_t i = 0; i < steps.size(); ++i) {
        if (i) out += " > ";
        const PathStep& s = steps[i];
        out += s.tag;
        if (s.id) out += "#" + *s.id;
        if (s.classes)
            for (const auto& cls : *s.classes) out += "." + cls;
        if (s.index) out += ":" + std::to_string(*s.index);
    }
    return out;
}

std::vector<const html::Node*> find_matches(const SelectorPath& path, const html::Node& root) {
    std::vector<const html::Node*> out;
    html::for_each_element(root, [&](const html::Node& n) {
        if (path.matches(n)) out.push_back(&n);
    });
    return out;
}

}  // namespace adtrace::induce
