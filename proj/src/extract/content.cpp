#include "extract/content.hpp"

#include <unordered_set>

#include "util/strings.hpp"

namespace adtrace::extract {

namespace {

const std::unordered_set<std::string>& skipped_elements() {
    static const std::unordered_set<std::string> s = {"script", "style", "template", "noscript",
                                                      "title"};
    return s;
}

const std::unordered_set<std::string>& block_elements() {
    static const std::unordered_set<std::string> s = {
        "address", "article", "aside",   "blockquote", "caption", "dd",      "details",
        "div",     "dl",      "dt",      "fieldset",   "figcaption", "figure", "footer",
        "form",    "h1",      "h2",      "h3",         "h4",      "h5",      "h6",
        "header",  "hr",      "li",      "main",       "nav",     "ol",      "p",
        "pre",     "section", "table",   "tbody",      "td",      "tfoot",   "th",
        "thead",   "tr",      "ul"};
    return s;
}

constexpr char kBoundary = '\x01';

void collect(const html::Node& node, std::string& out) {
    for (const auto& child : node.children) {
        switch (child->type) {
            case html::NodeType::Text:
                out += child->text;
                break;
            case html::NodeType::Element: {
                if (skipped_elements().count(child->tag)) break;
                if (child->tag == "br") {
                    out.push_back(kBoundary);
                    break;
                }
                bool block = block_elements().count(child->tag) > 0;
                if (block) out.push_back(kBoundary);
                collect(*child, out);
                if (block) out.push_back(kBoundary);
                break;
            }
            default:
                break;
        }
    }
}

const html::Node* find_title(const html::Node& root) {
    const html::Node* found = nullptr;
    html::for_each_element(root, [&](const html::Node& n) {
        if (!found && n.tag == "title") found = &n;
    });
    return found;
}

}  // namespace

PageContent extract_title_text(const html::Node& root) {
    PageContent out;
    if (const html::Node* title = find_title(root)) out.title = title->own_text();

    std::string raw;
    collect(root, raw);
    std::string text;
    std::string segment;
    auto flush = [&] {
        std::string collapsed = util::collapse_ws(segment);
        segment.clear();
        if (collapsed.empty()) return;
        if (!text.empty()) text.push_back('\n');
        text += collapsed;
    };
    for (char c : raw) {
        if (c == kBoundary)
            flush();
        else
            segment.push_back(c);
    }
    flush();
    out.text = std::move(text);
    return out;
}

std::string text_content(const html::Node& node) {
    std::string raw;
    std::function<void(const html::Node&)> walk = [&](const html::Node& n) {
        for (const auto& child : n.children) {
            if (child->type == html::NodeType::Text)
                raw += child->text;
            else if (child->type == html::NodeType::Element)
                walk(*child);
        }
    };
    walk(node);
    return util::collapse_ws(raw);
}

}  // namespace adtrace::extract
