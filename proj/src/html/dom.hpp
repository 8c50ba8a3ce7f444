#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adtrace::html {

enum class NodeType { Document, Element, Text, Comment };

/// One node of the parsed document tree. Element tags and attribute names
/// are lowercase; text content is decoded to UTF-8.
struct Node {
    NodeType type = NodeType::Document;
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::string text;  // Text / Comment payload
    std::vector<std::unique_ptr<Node>> children;
    Node* parent = nullptr;

    const std::string* attr(std::string_view name) const;
    std::string id() const;
    std::vector<std::string> classes() const;

    // Concatenated direct text-node children, whitespace-collapsed. This is
    // the value a selector with a text source extracts.
    std::string own_text() const;

    // Position among element siblings (text/comment nodes don't count).
    int element_index() const;

    size_t element_count() const;  // elements in this subtree, excluding self
};

using NodePtr = std::unique_ptr<Node>;

// Pre-order walk over element nodes.
void for_each_element(const Node& root, const std::function<void(const Node&)>& fn);

// Root-to-node chain of element ancestors, ending at `node` itself.
std::vector<const Node*> ancestor_chain(const Node& node);

}  // namespace adtrace::html
