#pragma once

#include <optional>
#include <string>
#include <vector>

#include "html/dom.hpp"

namespace adtrace::induce {

/// One step of a structural selector. `tag` always constrains; the optional
/// facets constrain further when set. Class sets match by inclusion (the
/// node must carry every listed class); `index` is the position among
/// element siblings.
struct PathStep {
    std::string tag;
    std::optional<std::vector<std::string>> classes;  // sorted, unique
    std::optional<std::string> id;
    std::optional<int> index;

    bool matches(const html::Node& node) const;
    // Number of optional facets kept on this step.
    int constraint_count() const;
};

/// Where a rule reads its value from once the path has matched.
struct ValueSource {
    enum class Kind { TextContent, Attribute };
    Kind kind = Kind::TextContent;
    std::string attribute;  // set when kind == Attribute

    std::string read(const html::Node& node) const;
    std::string to_string() const;
    static std::optional<ValueSource> from_string(const std::string& s);

    friend bool operator==(const ValueSource& a, const ValueSource& b) {
        return a.kind == b.kind && a.attribute == b.attribute;
    }
};

/// Selector anchored at the matched node: the last step matches the node,
/// earlier steps match successive ancestors.
struct SelectorPath {
    std::vector<PathStep> steps;

    bool matches(const html::Node& node) const;
    int constraint_count() const;
    std::string to_string() const;
};

struct SelectorRule {
    std::string field_name;
    SelectorPath path;
    ValueSource value_source;
};

// All element nodes in document order that the path matches.
std::vector<const html::Node*> find_matches(const SelectorPath& path, const html::Node& root);

}  // namespace adtrace::induce
