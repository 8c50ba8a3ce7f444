#pragma once

#include <optional>
#include <string>

#include "html/dom.hpp"

namespace adtrace::extract {

struct PageContent {
    std::optional<std::string> title;
    std::string text;
};

// Page title plus visible text: script/style/template/noscript content is
// excluded, whitespace is collapsed, block boundaries become single
// newlines.
PageContent extract_title_text(const html::Node& root);

// Full descendant text of one node, whitespace-collapsed (microdata-style
// textContent).
std::string text_content(const html::Node& node);

}  // namespace adtrace::extract
