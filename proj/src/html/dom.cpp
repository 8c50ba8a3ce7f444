#include "html/dom.hpp"

#include <algorithm>

#include "util/strings.hpp"

namespace adtrace::html {

const std::string* Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
        if (k == name) return &v;
    }
    return nullptr;
}

std::string Node::id() const {
    const std::string* v = attr("id");
    return v ? util::trim(*v) : std::string();
}

std::vector<std::string> Node::classes() const {
    std::vector<std::string> out;
    const std::string* v = attr("class");
    if (!v) return out;
    std::string cur;
    for (char c : *v) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Node::own_text() const {
    std::string raw;
    for (const auto& child : children) {
        if (child->type == NodeType::Text) raw += child->text;
    }
    return util::collapse_ws(raw);
}

int Node::element_index() const {
    if (!parent) return 0;
    int idx = 0;
    for (const auto& sib : parent->children) {
        if (sib.get() == this) return idx;
        if (sib->type == NodeType::Element) ++idx;
    }
    return idx;
}

size_t Node::element_count() const {
    size_t n = 0;
    for (const auto& child : children) {
        if (child->type == NodeType::Element) n += 1 + child->element_count();
    }
    return n;
}

void for_each_element(const Node& root, const std::function<void(const Node&)>& fn) {
    for (const auto& child : root.children) {
        if (child->type == NodeType::Element) {
            fn(*child);
            for_each_element(*child, fn);
        }
    }
}

std::vector<const Node*> ancestor_chain(const Node& node) {
    std::vector<const Node*> chain;
    const Node* cur = &node;
    while (cur && cur->type == NodeType::Element) {
        chain.push_back(cur);
        cur = cur->parent;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace adtrace::html
