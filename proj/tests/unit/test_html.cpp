#include <doctest.h>

#include <random>

#include "html/dom.hpp"
#include "html/parser.hpp"

using namespace adtrace::html;

namespace {

const Node* find_first(const Node& root, const std::string& tag) {
    const Node* found = nullptr;
    for_each_element(root, [&](const Node& n) {
        if (!found && n.tag == tag) found = &n;
    });
    return found;
}

size_t count_elements(const Node& root) {
    size_t n = 0;
    for_each_element(root, [&](const Node&) { ++n; });
    return n;
}

}  // namespace

TEST_CASE("basic tree construction") {
    ParsedPage page = parse_html_utf8("<html><body><div id=a class='x y'><p>hi</p></div></body></html>");
    CHECK(count_elements(*page.root) == 4);
    const Node* div = find_first(*page.root, "div");
    REQUIRE(div != nullptr);
    CHECK(div->id() == "a");
    CHECK(div->classes() == std::vector<std::string>{"x", "y"});
    const Node* p = find_first(*page.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->own_text() == "hi");
    CHECK(p->parent == div);
}

TEST_CASE("empty and pathological inputs never fail") {
    CHECK(count_elements(*parse_html_utf8("").root) == 0);
    CHECK(count_elements(*parse_html_utf8("just text").root) == 0);
    parse_html_utf8("<");
    parse_html_utf8("<!");
    parse_html_utf8("<div <span ><<<>>>");
    parse_html_utf8("</nope>");
    parse_html_utf8("<a href='unterminated");
    parse_html_utf8("<!-- unterminated comment");
    parse_html_utf8("<script>var x = '<div>';");
    CHECK(true);
}

TEST_CASE("random byte fuzzing is total") {
    std::mt19937 rng(42);
    for (int round = 0; round < 200; ++round) {
        std::string junk;
        size_t len = rng() % 512;
        for (size_t i = 0; i < len; ++i) junk.push_back(static_cast<char>(rng() & 0xFF));
        ParsedPage page = parse_html(junk, std::nullopt);
        CHECK(page.root != nullptr);
    }
}

TEST_CASE("void and self-closing elements") {
    ParsedPage page = parse_html_utf8("<div><img src=x><br/><span/>after</div><p>next</p>");
    const Node* div = find_first(*page.root, "div");
    REQUIRE(div != nullptr);
    // img, br, span are children of div; "after" stays inside div
    CHECK(div->children.size() == 4);
    const Node* p = find_first(*page.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->parent->type == NodeType::Document);
}

TEST_CASE("implied end tags") {
    ParsedPage page = parse_html_utf8("<ul><li>one<li>two</ul><p>a<p>b");
    const Node* ul = find_first(*page.root, "ul");
    REQUIRE(ul != nullptr);
    int lis = 0;
    for (const auto& c : ul->children)
        if (c->type == NodeType::Element && c->tag == "li") ++lis;
    CHECK(lis == 2);
    // the two <p> are siblings, not nested
    const Node* p = find_first(*page.root, "p");
    REQUIRE(p != nullptr);
    CHECK(p->parent->type == NodeType::Document);
    CHECK(p->own_text() == "a");
}

TEST_CASE("table structure") {
    ParsedPage page =
        parse_html_utf8("<table><tr><td>a<td>b<tr><td>c</table>");
    const Node* table = find_first(*page.root, "table");
    REQUIRE(table != nullptr);
    int rows = 0;
    for_each_element(*table, [&](const Node& n) {
        if (n.tag == "tr") ++rows;
    });
    CHECK(rows == 2);
}

TEST_CASE("script and style content is raw") {
    ParsedPage page = parse_html_utf8(
        "<script>if (a < b) { x = '<p>not a tag</p>'; }</script><p>real</p>");
    CHECK(find_first(*page.root, "p") != nullptr);
    const Node* script = find_first(*page.root, "script");
    REQUIRE(script != nullptr);
    REQUIRE(script->children.size() == 1);
    CHECK(script->children[0]->text == "if (a < b) { x = '<p>not a tag</p>'; }");
}

TEST_CASE("entities decode in text and attributes") {
    ParsedPage page = parse_html_utf8("<p title=\"a &amp; b\">x &lt;y&gt; &#233; &#x2019; &euro;</p>");
    const Node* p = find_first(*page.root, "p");
    REQUIRE(p != nullptr);
    CHECK(*p->attr("title") == "a & b");
    CHECK(p->own_text() == "x <y> \xC3\xA9 \xE2\x80\x99 \xE2\x82\xAC");
    // unknown and malformed references stay literal
    CHECK(decode_entities("&nosuch; & &#xZZ;") == "&nosuch; & &#xZZ;");
}

TEST_CASE("charset resolution priority") {
    // Latin-1 bytes: "café" as 63 61 66 E9
    std::string latin1_body = "<html><body><p>caf\xE9</p></body></html>";

    SUBCASE("declared charset wins") {
        ParsedPage page = parse_html(latin1_body, std::string("ISO-8859-1"));
        CHECK(page.charset == "iso-8859-1");
        CHECK(find_first(*page.root, "p")->own_text() == "caf\xC3\xA9");
    }
    SUBCASE("meta declaration used when no header") {
        std::string body = "<meta charset=\"iso-8859-1\"><p>caf\xE9</p>";
        ParsedPage page = parse_html(body, std::nullopt);
        CHECK(page.charset == "iso-8859-1");
        CHECK(find_first(*page.root, "p")->own_text() == "caf\xC3\xA9");
    }
    SUBCASE("meta http-equiv form") {
        std::string body =
            "<meta http-equiv=\"Content-Type\" content=\"text/html; charset=windows-1252\">"
            "<p>\x93quoted\x94</p>";
        ParsedPage page = parse_html(body, std::nullopt);
        CHECK(page.charset == "windows-1252");
        CHECK(find_first(*page.root, "p")->own_text() == "\xE2\x80\x9Cquoted\xE2\x80\x9D");
    }
    SUBCASE("utf-8 fallback is lossy, not fatal") {
        ParsedPage page = parse_html(latin1_body, std::nullopt);
        CHECK(page.charset == "utf-8");
        CHECK(find_first(*page.root, "p")->own_text() == "caf\xEF\xBF\xBD");
    }
}

TEST_CASE("element index counts element siblings only") {
    ParsedPage page = parse_html_utf8("<div>text<span>a</span>more<b>c</b></div>");
    const Node* b = find_first(*page.root, "b");
    REQUIRE(b != nullptr);
    CHECK(b->element_index() == 1);
    const Node* span = find_first(*page.root, "span");
    CHECK(span->element_index() == 0);
}

TEST_CASE("ancestor chain") {
    ParsedPage page = parse_html_utf8("<div class=price><span>US $1,500.00</span></div>");
    const Node* span = find_first(*page.root, "span");
    auto chain = ancestor_chain(*span);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0]->tag == "div");
    CHECK(chain[1]->tag == "span");
}
